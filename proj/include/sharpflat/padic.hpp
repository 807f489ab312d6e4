#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "sharpflat/errors.hpp"
#include "sharpflat/valq.hpp"

namespace sharpflat {

using u128 = unsigned __int128;

// Largest N with p^N < 2^126 (hard representation cap).
int max_prec_for(uint64_t p);

u128 pow_u128(uint64_t p, int e);

// a*b mod m for m < 2^126. Fast path when m fits in 64 bits.
inline u128 mulmod128(u128 a, u128 b, u128 m) {
    if (m <= UINT64_MAX) {
        return (u128)((uint64_t)(a % m)) * (uint64_t)(b % m) % m;
    }
    u128 r = 0;
    a %= m;
    b %= m;
    while (b) {
        if (b & 1) {
            r += a;
            if (r >= m) r -= m;
        }
        a <<= 1;
        if (a >= m) a -= m;
        b >>= 1;
    }
    return r;
}

std::string u128_to_string(u128 v);

// Finite-precision element of Q_p with p-power denominator:
//   value = num / p^den,  num determined mod p^N  (0 <= num < p^N).
// Absolute precision = N - den: value is known mod p^(N-den).
// Exactly representable integers and p-free rationals enter at a caller-chosen
// working precision; every operation propagates the certified precision.
class Zp {
  public:
    Zp() : p_(0), num_(0), N_(0), d_(0) {}

    static Zp from_int(uint64_t p, long long v, int prec);
    static Zp from_rational(uint64_t p, long long num, long long den, int prec);
    static Zp zero(uint64_t p) { return Zp(p, 0, max_prec_for(p), 0); }
    static Zp one(uint64_t p) { return from_int(p, 1, max_prec_for(p)); }
    // value known mod p^abs_prec with integral residue
    static Zp with_residue(uint64_t p, u128 residue, int abs_prec);

    uint64_t prime() const { return p_; }
    bool valid() const { return p_ != 0; }
    int abs_prec() const { return N_ - d_; }
    int den_exp() const { return d_; }

    // residue is zero at the stored precision (value in O(p^abs_prec))
    bool is_zero_res() const { return num_ == 0; }

    // exact valuation if determined at this precision
    std::optional<long> ord() const;
    long ord_or_throw() const;
    ValQ ord_valq() const;  // exact ord, or throws PrecisionExhausted

    Zp operator+(const Zp& o) const;
    Zp operator-(const Zp& o) const;
    Zp operator-() const;
    Zp operator*(const Zp& o) const;

    Zp mul_pow_p(int k) const;  // multiply by p^k, k may be negative
    Zp inv() const;             // inverse of a unit
    Zp div(const Zp& o) const;  // division; ord(o) must be determined
    Zp pow(long e) const;

    Zp cap_abs_prec(int A) const;

    // a == b mod p^digits (as far as both are determined; throws if neither
    // side carries `digits` certified digits)
    bool congruent(const Zp& o, int digits) const;

    // residue of an integral value (den 0) mod p^k, k <= abs_prec
    u128 int_residue(int k) const;
    // numerator/denominator access for serialization
    u128 raw_num() const { return num_; }
    int raw_N() const { return N_; }

    Zp zero_like() const { return Zp(p_, 0, max_prec_for(p_), 0); }
    Zp one_like() const { return from_int(p_, 1, max_prec_for(p_)); }

    std::string str() const;

  private:
    Zp(uint64_t p, u128 num, int N, int d) : p_(p), num_(num), N_(N), d_(d) { normalize(); }
    void normalize();
    long num_ord_capped() const;  // ord_p(num_), capped at N_

    uint64_t p_;
    u128 num_;
    int N_;  // residue modulus exponent
    int d_;  // denominator exponent
};

std::ostream& operator<<(std::ostream& os, const Zp& z);

// Teichmuller lift: the (p-1)st root of unity congruent to a mod p.
// For p = 2 the tame characters are the sign characters: returns +-1 by a mod 4.
Zp teichmuller(uint64_t p, long long a, int prec);

// smallest e >= 0 with gamma^e = a / i(omega(a)) mod p^N, gamma = 1 + 2p,
// N = n+1 (p odd), n+2 (p = 2); digit-by-digit in base gamma, no series.
long discrete_log_gamma(uint64_t p, long long a, int n);

}  // namespace sharpflat
