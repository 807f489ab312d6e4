#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sharpflat::kernels {

using u64 = uint64_t;

// Coefficient convolution mod q (q < 2^63): out[k] = sum_{i+j=k} a[i] b[j].
// out has size na + nb - 1. Serial reference implementation.
void conv_mod_serial(const u64* a, size_t na, const u64* b, size_t nb, u64* out, u64 q);

// OpenMP variant: the output index loop is data-parallel (no shared writes).
void conv_mod_omp(const u64* a, size_t na, const u64* b, size_t nb, u64* out, u64 q);

// Dispatches to the OpenMP kernel above the crossover size, else serial.
void conv_mod(const u64* a, size_t na, const u64* b, size_t nb, u64* out, u64 q);

// In-place reduction of a coefficient vector modulo Phi_{p^L}(X)
// (X^e = -(1 + X^{p^{L-1}} + ... + X^{(p-2) p^{L-1}}), e = p^{L-1}(p-1)).
void cyclo_reduce(std::vector<u64>& v, u64 p, int L, u64 q);

// Synthetic division ladder: writes the (X-1)-adic expansion digits
// r_j = remainder of successive divisions by (X-1); serial reference and a
// blocked OpenMP variant (row-parallel prefix blocks).
void shift_expand_serial(std::vector<u64>& v, u64 q);
void shift_expand_omp(std::vector<u64>& v, u64 q);

bool openmp_enabled();
int max_threads();

}  // namespace sharpflat::kernels
