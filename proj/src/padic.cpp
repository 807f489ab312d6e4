#include "sharpflat/padic.hpp"

#include <algorithm>
#include <cmath>

namespace sharpflat {

int max_prec_for(uint64_t p) {
    int n = 0;
    u128 v = 1;
    const u128 cap = (u128)1 << 126;
    while (v < cap / p) {
        v *= p;
        ++n;
    }
    return n;
}

u128 pow_u128(uint64_t p, int e) {
    u128 r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s += char('0' + (int)(v % 10));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

void Zp::normalize() {
    if (!valid()) return;
    if (N_ < 0) N_ = 0;
    if (num_ == 0) {
        N_ = N_ - d_;
        if (N_ < 0) N_ = 0;
        d_ = 0;
        return;
    }
    while (d_ > 0 && num_ % p_ == 0) {
        num_ /= p_;
        --N_;
        --d_;
    }
}

long Zp::num_ord_capped() const {
    if (num_ == 0) return N_;
    long v = 0;
    u128 n = num_;
    while (n % p_ == 0) {
        n /= p_;
        ++v;
    }
    return v;
}

Zp Zp::from_int(uint64_t p, long long v, int prec) {
    int cap = std::min(prec, max_prec_for(p));
    if (cap < 0) cap = 0;
    u128 m = pow_u128(p, cap);
    u128 r;
    if (v >= 0)
        r = (u128)v % m;
    else
        r = (m - ((u128)(-(v + 1)) + 1) % m) % m;
    return Zp(p, r, cap, 0);
}

Zp Zp::with_residue(uint64_t p, u128 residue, int abs_prec) {
    int cap = std::min(abs_prec, max_prec_for(p));
    if (cap < 0) cap = 0;
    return Zp(p, residue % pow_u128(p, cap), cap, 0);
}

Zp Zp::from_rational(uint64_t p, long long num, long long den, int prec) {
    if (den == 0) throw NotAUnit("zero denominator");
    if (den < 0) {
        den = -den;
        num = -num;
    }
    int dden = 0;
    while (den % (long long)p == 0) {
        den /= (long long)p;
        ++dden;
    }
    Zp n = from_int(p, num, prec + dden);
    Zp d = from_int(p, den, prec + dden);
    return n.div(d).mul_pow_p(-dden);
}

std::optional<long> Zp::ord() const {
    long v = num_ord_capped();
    if (v >= N_) return std::nullopt;
    return v - d_;
}

long Zp::ord_or_throw() const {
    auto v = ord();
    if (!v) throw PrecisionExhausted("valuation not determined at precision " + std::to_string(abs_prec()));
    return *v;
}

ValQ Zp::ord_valq() const { return ValQ(ord_or_throw()); }

Zp Zp::operator+(const Zp& o) const {
    int D = std::max(d_, o.d_);
    long A1 = N_ + (D - d_), A2 = o.N_ + (D - o.d_);
    int N = (int)std::min({A1, A2, (long)max_prec_for(p_)});
    if (N < 0) N = 0;
    u128 m = pow_u128(p_, N);
    u128 a = mulmod128(num_ % m, pow_u128(p_, std::min<int>(D - d_, N)) % m, m);
    u128 b = mulmod128(o.num_ % m, pow_u128(p_, std::min<int>(D - o.d_, N)) % m, m);
    u128 s = a + b;
    if (s >= m) s -= m;
    return Zp(p_, s, N, D);
}

Zp Zp::operator-() const {
    if (num_ == 0) return *this;
    return Zp(p_, pow_u128(p_, N_) - num_, N_, d_);
}

Zp Zp::operator-(const Zp& o) const { return *this + (-o); }

Zp Zp::operator*(const Zp& o) const {
    long v1 = num_ord_capped(), v2 = o.num_ord_capped();
    long A1 = N_ - d_, A2 = o.N_ - o.d_;  // absolute precisions of values, shifted by dens
    // abs precision of the product (in value units):
    long val1 = v1 - d_, val2 = v2 - o.d_;
    long Aprod = std::min(A1 + val2, A2 + val1);
    int d = d_ + o.d_;
    int N = (int)std::min(Aprod + d, (long)max_prec_for(p_));
    if (N < 0) N = 0;
    u128 m = pow_u128(p_, N);
    u128 r = mulmod128(num_ % m, o.num_ % m, m);
    return Zp(p_, r, N, d);
}

Zp Zp::mul_pow_p(int k) const {
    if (k == 0) return *this;
    if (k < 0) return Zp(p_, num_, N_, d_ - k);
    // multiply numerator by p^k, lifting the modulus with it
    int N = std::min(N_ + k, max_prec_for(p_));
    u128 m = pow_u128(p_, N);
    u128 r = mulmod128(num_ % m, pow_u128(p_, k) % m, m);
    return Zp(p_, r, N, d_);
}

Zp Zp::inv() const {
    long v = num_ord_capped();
    if (v >= N_) throw PrecisionExhausted("inverse of an indistinguishable-from-zero value");
    if (v != 0) throw NotAUnit("inverse of a non-unit (ord != 0 in numerator)");
    // Newton iteration for the inverse of num_ mod p^N
    int A = N_;
    u128 m = pow_u128(p_, A);
    // inverse mod p
    u128 a0 = num_ % p_;
    u128 x = 1;
    {
        // Fermat: a^(p-2) mod p
        u128 b = a0, e = p_ - 2, r = 1;
        while (e) {
            if (e & 1) r = mulmod128(r, b, p_);
            b = mulmod128(b, b, p_);
            e >>= 1;
        }
        x = r;
    }
    int k = 1;
    while (k < A) {
        k = std::min(2 * k, A);
        u128 mk = pow_u128(p_, k);
        // x <- x(2 - num x) mod p^k
        u128 t = mulmod128(num_ % mk, x % mk, mk);
        u128 two_minus = (2 % mk + mk - t % mk) % mk;
        x = mulmod128(x % mk, two_minus, mk);
    }
    // value = num/p^d ; inverse = p^d / num = p^d * x
    u128 r = mulmod128(x % m, pow_u128(p_, std::min(d_, A)) % m, m);
    return Zp(p_, r, A, 0);
}

Zp Zp::div(const Zp& o) const {
    long v = o.num_ord_capped();
    if (v >= o.N_) throw PrecisionExhausted("division by indistinguishable-from-zero value");
    // o = p^v * unit / p^d
    Zp unit(o.p_, o.num_ / pow_u128(o.p_, v), o.N_ - (int)v, 0);
    return (*this * unit.inv()).mul_pow_p((int)o.d_ - (int)v);
}

Zp Zp::pow(long e) const {
    Zp r = one_like();
    Zp b = *this;
    bool negexp = e < 0;
    unsigned long k = negexp ? (unsigned long)(-e) : (unsigned long)e;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return negexp ? r.inv().mul_pow_p(0) : r;  // inv() handles units only
}

Zp Zp::cap_abs_prec(int A) const {
    if (abs_prec() <= A) return *this;
    int N = A + d_;
    if (N < 0) N = 0;
    return Zp(p_, num_ % pow_u128(p_, N), N, d_);
}

bool Zp::congruent(const Zp& o, int digits) const {
    Zp diff = *this - o;
    if (diff.abs_prec() < digits)
        throw PrecisionExhausted("cannot certify congruence to " + std::to_string(digits) +
                                 " digits (only " + std::to_string(diff.abs_prec()) + ")");
    auto v = diff.ord();
    return !v || *v >= digits;
}

u128 Zp::int_residue(int k) const {
    if (d_ != 0) throw PrecisionExhausted("residue of a non-integral value");
    if (k > N_) throw PrecisionExhausted("residue beyond stored precision");
    return num_ % pow_u128(p_, k);
}

std::string Zp::str() const {
    std::string s;
    s += u128_to_string(num_);
    if (d_) s += "/" + std::to_string(prime()) + "^" + std::to_string(d_);
    s += " + O(" + std::to_string(prime()) + "^" + std::to_string(abs_prec()) + ")";
    return s;
}

std::ostream& operator<<(std::ostream& os, const Zp& z) { return os << z.str(); }

Zp teichmuller(uint64_t p, long long a, int prec) {
    long long am = a % (long long)p;
    if (am < 0) am += (long long)p;
    if (am == 0) throw NotAUnit("teichmuller of a non-unit");
    if (p == 2) {
        long long a4 = a % 4;
        if (a4 < 0) a4 += 4;
        return Zp::from_int(2, a4 == 1 ? 1 : -1, prec);
    }
    int A = std::min(prec, max_prec_for(p));
    u128 m = pow_u128(p, A);
    u128 x = (u128)am % m;
    // x <- x^p converges to the root of unity (quadratic once separated mod p)
    for (int i = 0; i < A + 2; ++i) {
        u128 b = x, e = p, r = 1;
        while (e) {
            if (e & 1) r = mulmod128(r, b, m);
            b = mulmod128(b, b, m);
            e >>= 1;
        }
        if (r == x) break;
        x = r;
    }
    return Zp::with_residue(p, x, A);
}

long discrete_log_gamma(uint64_t p, long long a, int n) {
    if (n <= 0) return 0;
    long long am = a % (long long)p;
    if (am < 0) am += (long long)p;
    if (am == 0) throw NotAUnit("discrete_log_gamma of a non-unit");
    int N = (p == 2) ? n + 2 : n + 1;
    int guard = (p == 2) ? 2 : 1;  // gamma^{p^j} = 1 + 2p^{j+1} mod p^{j+2}
    u128 m = pow_u128(p, N);
    u128 gamma = (1 + 2 * (u128)p) % m;
    // target = a / omega(a) mod p^N
    Zp t = Zp::from_int(p, a, N).div(teichmuller(p, a, N));
    u128 target = t.int_residue(N);
    u128 cur = 1;
    long e = 0;
    u128 pj = 1;  // p^j
    for (int j = 0; j < n; ++j) {
        u128 mj = pow_u128(p, std::min(N, j + 1 + guard));
        // gamma^(p^j)
        u128 step = 1, b = gamma, k = pj;
        while (k) {
            if (k & 1) step = mulmod128(step, b, m);
            b = mulmod128(b, b, m);
            k >>= 1;
        }
        u128 c = cur;
        int digit = -1;
        for (u128 t2 = 0; t2 < p; ++t2) {
            if (c % mj == target % mj) {
                digit = (int)t2;
                break;
            }
            c = mulmod128(c, step, m);
        }
        if (digit < 0) throw PrecisionExhausted("discrete_log_gamma digit extraction failed");
        e += (long)digit * (long)(pj % (u128)(UINT64_MAX));
        cur = c;
        pj *= p;
    }
    if (cur != target) throw PrecisionExhausted("discrete_log_gamma did not converge");
    return e;
}

}  // namespace sharpflat
