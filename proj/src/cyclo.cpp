#include "sharpflat/cyclo.hpp"

#include <algorithm>

#include "sharpflat/kernels.hpp"

namespace sharpflat {

int cyclo_max_prec(uint64_t p) {
    int n = 0;
    uint64_t v = 1;
    const uint64_t cap = (uint64_t)1 << 62;
    while (v < cap / p) {
        v *= p;
        ++n;
    }
    return n;
}

CycloField::CycloField(uint64_t p, int level, int prec) : p_(p), L_(level), M_(prec) {
    if (level < 1) throw ParseError("cyclotomic level must be >= 1");
    if (M_ > cyclo_max_prec(p)) M_ = cyclo_max_prec(p);
    size_t pl = 1;
    for (int i = 0; i + 1 < L_; ++i) pl *= (size_t)p_;
    e_ = pl * (size_t)(p_ - 1);
    q_ = 1;
    for (int i = 0; i < M_; ++i) q_ *= p_;
}

CycloField::Elem CycloField::one() const {
    Elem z(e_, 0);
    z[0] = 1 % q_;
    return z;
}

CycloField::Elem CycloField::from_int(long long v) const {
    Elem z(e_, 0);
    long long r = v % (long long)q_;
    if (r < 0) r += (long long)q_;
    z[0] = (uint64_t)r;
    return z;
}

CycloField::Elem CycloField::from_zp(const Zp& z) const {
    if (z.den_exp() != 0) throw PrecisionExhausted("cyclotomic coefficient with denominator");
    Elem out(e_, 0);
    int k = std::min(M_, z.abs_prec());
    out[0] = (uint64_t)(z.int_residue(k) % (u128)q_);
    // residues beyond the coefficient's certified digits are not meaningful;
    // callers track certification via eval results
    return out;
}

CycloField::Elem CycloField::zeta(int m) const {
    if (m < 1 || m > L_) throw ParseError("zeta level out of range");
    size_t exp = 1;
    for (int i = 0; i < L_ - m; ++i) exp *= (size_t)p_;
    std::vector<uint64_t> v(exp + 1, 0);
    v[exp] = 1;
    kernels::cyclo_reduce(v, p_, L_, q_);
    return v;
}

CycloField::Elem CycloField::embed_from_level(const CycloField& sub, const Elem& x) const {
    // zeta_{p^m} |-> zeta_{p^L}^{p^{L-m}}: substitute X -> X^{p^{L-m}}
    size_t exp = 1;
    for (int i = 0; i < L_ - sub.L_; ++i) exp *= (size_t)p_;
    std::vector<uint64_t> v;
    v.assign((sub.deg() - 1) * exp + 1, 0);
    for (size_t i = 0; i < sub.deg(); ++i) v[i * exp] = x[i] % q_;
    kernels::cyclo_reduce(v, p_, L_, q_);
    return v;
}

CycloField::Elem CycloField::add(const Elem& a, const Elem& b) const {
    Elem r(e_);
    for (size_t i = 0; i < e_; ++i) {
        uint64_t s = a[i] + b[i];
        if (s >= q_) s -= q_;
        r[i] = s;
    }
    return r;
}

CycloField::Elem CycloField::sub(const Elem& a, const Elem& b) const {
    Elem r(e_);
    for (size_t i = 0; i < e_; ++i) {
        uint64_t s = a[i] + (q_ - b[i]);
        if (s >= q_) s -= q_;
        r[i] = s;
    }
    return r;
}

CycloField::Elem CycloField::neg(const Elem& a) const {
    Elem r(e_);
    for (size_t i = 0; i < e_; ++i) r[i] = a[i] ? q_ - a[i] : 0;
    return r;
}

CycloField::Elem CycloField::scal(const Elem& a, long long c) const {
    long long cr = c % (long long)q_;
    if (cr < 0) cr += (long long)q_;
    Elem r(e_);
    for (size_t i = 0; i < e_; ++i) r[i] = (uint64_t)((u128)a[i] * (uint64_t)cr % q_);
    return r;
}

CycloField::Elem CycloField::mul(const Elem& a, const Elem& b) const {
    std::vector<uint64_t> out(2 * e_ - 1, 0);
    kernels::conv_mod(a.data(), e_, b.data(), e_, out.data(), q_);
    kernels::cyclo_reduce(out, p_, L_, q_);
    return out;
}

CycloField::Elem CycloField::pow(const Elem& a, unsigned long k) const {
    Elem r = one(), b = a;
    while (k) {
        if (k & 1) r = mul(r, b);
        b = mul(b, b);
        k >>= 1;
    }
    return r;
}

CycloField::Elem CycloField::mul_p_power(const Elem& a, int k) const {
    Elem r = a;
    for (int i = 0; i < k; ++i)
        for (size_t j = 0; j < e_; ++j) r[j] = (uint64_t)((u128)r[j] * p_ % q_);
    return r;
}

bool CycloField::is_zero(const Elem& a) const {
    for (auto x : a)
        if (x) return false;
    return true;
}

CycloField::Elem CycloField::phi_at_zeta(int i, int n) const {
    // Phi_{p^i}(zeta_{p^n}) = sum_{t<p} zeta_{p^n}^{t p^{i-1}}
    Elem zn = zeta(n);
    size_t st = 1;
    for (int j = 0; j + 1 < i; ++j) st *= (size_t)p_;
    Elem acc = zero();
    Elem zp = pow(zn, (unsigned long)st);
    Elem cur = one();
    for (uint64_t t = 0; t < p_; ++t) {
        acc = add(acc, cur);
        if (t + 1 < p_) cur = mul(cur, zp);
    }
    return acc;
}

std::optional<ValQ> CycloField::ord(const Elem& a) const {
    std::vector<uint64_t> v = a;
    if (v.size() >= 4096)
        kernels::shift_expand_omp(v, q_);
    else
        kernels::shift_expand_serial(v, q_);
    std::optional<ValQ> best;
    for (size_t j = 0; j < v.size(); ++j) {
        if (v[j] == 0) continue;
        long o = 0;
        uint64_t x = v[j];
        while (x % p_ == 0) {
            x /= p_;
            ++o;
        }
        ValQ cand = ValQ(o) + ValQ((long long)j, (long long)e_);
        if (!best || cand < *best) best = cand;
    }
    // zero digits only say ">= M"; a minimum below M is therefore exact
    if (best && *best < ValQ(M_)) return best;
    return std::nullopt;
}

ValQ CycloField::ord_or_throw(const Elem& a) const {
    auto v = ord(a);
    if (!v) throw PrecisionExhausted("cyclotomic valuation not determined below precision");
    return *v;
}

}  // namespace sharpflat
