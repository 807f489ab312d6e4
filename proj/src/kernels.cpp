#include "sharpflat/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sharpflat::kernels {

using u128 = unsigned __int128;

static inline u64 conv_at(const u64* a, size_t na, const u64* b, size_t nb, size_t k, u64 q) {
    size_t i0 = k >= nb ? k - nb + 1 : 0;
    size_t i1 = k < na ? k : na - 1;
    u128 acc = 0;
    for (size_t i = i0; i <= i1; ++i) {
        acc += (u128)a[i] * b[k - i];
        if (acc >> 126) acc %= q;
    }
    return (u64)(acc % q);
}

void conv_mod_serial(const u64* a, size_t na, const u64* b, size_t nb, u64* out, u64 q) {
    size_t n = na + nb - 1;
    for (size_t k = 0; k < n; ++k) out[k] = conv_at(a, na, b, nb, k, q);
}

void conv_mod_omp(const u64* a, size_t na, const u64* b, size_t nb, u64* out, u64 q) {
    long n = (long)(na + nb - 1);
#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k) out[k] = conv_at(a, na, b, nb, (size_t)k, q);
}

void conv_mod(const u64* a, size_t na, const u64* b, size_t nb, u64* out, u64 q) {
    if (na + nb >= 2048 && openmp_enabled())
        conv_mod_omp(a, na, b, nb, out, q);
    else
        conv_mod_serial(a, na, b, nb, out, q);
}

void cyclo_reduce(std::vector<u64>& v, u64 p, int L, u64 q) {
    size_t pl = 1;
    for (int i = 0; i + 1 < L; ++i) pl *= (size_t)p;
    size_t e = pl * (size_t)(p - 1);
    if (v.size() <= e) {
        v.resize(e, 0);
        return;
    }
    for (size_t i = v.size(); i-- > e;) {
        u64 c = v[i];
        if (c == 0) continue;
        v[i] = 0;
        u64 neg = q - c;  // X^{i} = X^{i-e} * X^e, X^e = -sum_t X^{t pl}
        for (u64 t = 0; t + 1 < p; ++t) {
            size_t j = i - e + (size_t)t * pl;
            v[j] = (v[j] + neg) % q;
        }
    }
    v.resize(e);
}

void shift_expand_serial(std::vector<u64>& v, u64 q) {
    // Repeated synthetic division by (X-1); after the call v[j] is the j-th
    // digit of the (X-1)-adic expansion. One pass is a downward suffix sum.
    size_t n = v.size();
    if (n < 2) return;
    for (size_t j = 0; j + 1 < n; ++j) {
        for (size_t i = n - 1; i-- > j;) {
            v[i] += v[i + 1];
            if (v[i] >= q) v[i] -= q;
        }
    }
}

void shift_expand_omp(std::vector<u64>& v, u64 q) {
#ifndef _OPENMP
    shift_expand_serial(v, q);
#else
    // Each pass is a suffix sum over v[j..n): chunked two-sweep version.
    size_t n = v.size();
    if (n < 2) return;
    size_t nt = (size_t)max_threads();
    for (size_t j = 0; j + 1 < n; ++j) {
        size_t len = n - j;
        if (len < 4096 || nt == 1) {
            for (size_t i = n - 1; i-- > j;) {
                v[i] += v[i + 1];
                if (v[i] >= q) v[i] -= q;
            }
            continue;
        }
        size_t chunk = (len + nt - 1) / nt;
        std::vector<u64> total(nt, 0);
#pragma omp parallel for schedule(static)
        for (long t = 0; t < (long)nt; ++t) {
            size_t lo = j + (size_t)t * chunk;
            size_t hi = std::min(lo + chunk, n);
            if (lo >= n) continue;
            u64 acc = 0;
            for (size_t i = hi; i-- > lo;) {
                acc += v[i];
                if (acc >= q) acc -= q;
                v[i] = acc;
            }
            total[t] = acc;
        }
#pragma omp parallel for schedule(static)
        for (long t = 0; t < (long)nt; ++t) {
            size_t lo = j + (size_t)t * chunk;
            size_t hi = std::min(lo + chunk, n);
            if (lo >= n) continue;
            u128 add = 0;
            for (size_t s = (size_t)t + 1; s < nt; ++s) {
                add += total[s];
                if (add >= q) add -= q;
            }
            u64 a = (u64)add;
            if (a)
                for (size_t i = lo; i < hi; ++i) {
                    v[i] += a;
                    if (v[i] >= q) v[i] -= q;
                }
        }
    }
#endif
}

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace sharpflat::kernels
