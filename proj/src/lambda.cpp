#include "sharpflat/lambda.hpp"

#include <algorithm>

namespace sharpflat {

Poly<Zp> lambda_modulus(uint64_t p, int n, int prec) {
    size_t pn = 1;
    for (int i = 0; i < n; ++i) pn *= (size_t)p;
    Zp one = Zp::one(p).cap_abs_prec(prec);
    Poly<Zp> m = one_plus_T_pow(pn, one);
    m.c[0] = m.c[0] - one;
    m.trim();
    return m;
}

static Poly<Zp> reduce_rep(Poly<Zp> f, uint64_t p, int n) {
    size_t pn = 1;
    for (int i = 0; i < n; ++i) pn *= (size_t)p;
    if (f.c.size() <= pn) return f;
    int prec = max_prec_for(p);
    Poly<Zp> m = lambda_modulus(p, n, prec);
    return f.divrem(m).second;
}

LambdaElement::LambdaElement(Poly<Zp> f, uint64_t pp, int level)
    : rep(reduce_rep(std::move(f), pp, level)), p(pp), n(level) {}

LambdaElement LambdaElement::operator+(const LambdaElement& o) const {
    return LambdaElement(rep + o.rep, p, n);
}
LambdaElement LambdaElement::operator-(const LambdaElement& o) const {
    return LambdaElement(rep - o.rep, p, n);
}
LambdaElement LambdaElement::operator-() const { return LambdaElement(-rep, p, n); }
LambdaElement LambdaElement::operator*(const LambdaElement& o) const {
    return LambdaElement(rep * o.rep, p, n);
}
LambdaElement LambdaElement::scale(const Zp& s) const { return LambdaElement(rep.scale(s), p, n); }

bool LambdaElement::congruent(const LambdaElement& o, int digits) const {
    Zp model = Zp::zero(p);
    return rep.congruent(o.rep, digits, model);
}

LambdaElement LambdaElement::mul_group_like(long k) const {
    long pn = (long)ring_size();
    long r = k % pn;
    if (r < 0) r += pn;
    Zp model = Zp::one(p);
    return LambdaElement(rep * one_plus_T_pow((size_t)r, model), p, n);
}

LambdaElement LambdaElement::sigma() const {
    // f(T) -> f((1+T)^{-1} - 1) = sum c_k (-T)^k (1+T)^{p^n - k}
    size_t pn = ring_size();
    Zp model = Zp::one(p);
    Poly<Zp> acc;
    for (size_t k = 0; k < rep.c.size(); ++k) {
        if (rep.c[k].is_zero_res()) continue;
        Zp ck = (k % 2 == 0) ? rep.c[k] : -rep.c[k];
        Poly<Zp> term = one_plus_T_pow(pn - k, model).scale(ck).mul_Tk(k);
        acc = acc + term;
    }
    return LambdaElement(acc, p, n);
}

LambdaElement project_pi(const LambdaElement& x) {
    if (x.n == 0) throw LevelUnderflow("project_pi at level 0");
    return LambdaElement(x.rep, x.p, x.n - 1);
}

LambdaElement project_to(const LambdaElement& x, int m) {
    if (m > x.n) throw LevelUnderflow("project_to above current level");
    return LambdaElement(x.rep, x.p, m);
}

LambdaElement norm_nu(const LambdaElement& x) {
    // lift the representative, multiply by ((1+T)^{p^n}-1)/((1+T)^{p^{n-1}}-1)
    // = Phi_{p^n}(1+T)
    int n = x.n + 1;
    size_t pn1 = x.ring_size();
    Zp model = Zp::one(x.p);
    Poly<Zp> phi;  // sum_{t<p} (1+T)^{t p^{n-1}}
    for (uint64_t t = 0; t < x.p; ++t) phi = phi + one_plus_T_pow((size_t)t * pn1, model);
    return LambdaElement(x.rep * phi, x.p, n);
}

LambdaElement group_like_power(uint64_t p, int n, long long u, int prec) {
    size_t pn = 1;
    for (int i = 0; i < n; ++i) pn *= (size_t)p;
    long long r = u % (long long)pn;
    if (r < 0) r += (long long)pn;
    Zp one = Zp::one(p).cap_abs_prec(prec);
    return LambdaElement(one_plus_T_pow((size_t)r, one), p, n);
}

CycloField::EvalResult eval_at_zeta(const LambdaElement& x, const CycloField& K, int m) {
    if (m > x.n) throw LevelUnderflow("eval_at_zeta above element level");
    if (m == 0) {
        // T = 0
        CycloField::Elem v = K.zero();
        Zp c0 = x.rep.c.empty() ? Zp::zero(x.p) : x.rep.c[0];
        int cert = std::min(K.prec(), c0.abs_prec());
        return {K.from_zp(c0.cap_abs_prec(K.prec())), cert};
    }
    return K.eval_poly_at_zeta_minus_1(x.rep, m);
}

Zp SeriesApprox::coeff(size_t k) const { return k < c.size() ? c[k] : Zp::zero(p); }

SeriesApprox series_of(const LambdaElement& f) {
    SeriesApprox s;
    s.p = f.p;
    s.c = f.rep.c;
    return s;
}

template <class GetOrd>
static std::optional<IwasawaInvariants> invariants_impl(size_t len, GetOrd&& get) {
    // find the first index whose valuation is certified minimal
    std::optional<ValQ> mu;
    size_t lam = 0;
    for (size_t i = 0; i < len; ++i) {
        auto [o, floor_prec] = get(i);
        if (o) {
            if (!mu || ValQ(*o) < *mu) {
                mu = ValQ(*o);
                lam = i;
            }
        }
    }
    if (!mu) return std::nullopt;
    // certification: every earlier coefficient must be certifiably > mu, and
    // mu itself must be an exact valuation (it is, by construction)
    for (size_t i = 0; i < lam; ++i) {
        auto [o, floor_prec] = get(i);
        if (o && ValQ(*o) <= *mu) return std::nullopt;  // cannot happen, safety
        if (!o && ValQ(floor_prec) <= *mu) return std::nullopt;  // not enough ledger
    }
    IwasawaInvariants inv;
    inv.mu = *mu;
    inv.lambda = (long)lam;
    return inv;
}

std::optional<IwasawaInvariants> iwasawa_invariants(const SeriesApprox& f) {
    return invariants_impl(f.c.size(), [&](size_t i) {
        const Zp& z = f.c[i];
        return std::pair<std::optional<long>, long>(z.ord(), z.abs_prec());
    });
}

std::optional<IwasawaInvariants> iwasawa_invariants(const LambdaElement& f) {
    return iwasawa_invariants(series_of(f));
}

Poly<Zp> cyclotomic_rep(uint64_t p, int m, int prec) {
    // Phi_{p^m}(1+T) = sum_{t<p} (1+T)^{t p^{m-1}}
    size_t pm1 = 1;
    for (int i = 0; i + 1 < m; ++i) pm1 *= (size_t)p;
    Zp one = Zp::one(p).cap_abs_prec(prec);
    Poly<Zp> phi;
    for (uint64_t t = 0; t < p; ++t) phi = phi + one_plus_T_pow((size_t)t * pm1, one);
    return phi;
}

std::optional<long> ord_at_point(const LambdaElement& f, int point_m) {
    if (point_m <= 0) {
        // order of vanishing at T = 0: index of first certified-nonzero coeff
        for (size_t i = 0; i < f.rep.c.size(); ++i) {
            const Zp& ci = f.rep.c[i];
            if (!ci.is_zero_res()) return (long)i;
            if (ci.abs_prec() <= 0) return std::nullopt;
        }
        return std::nullopt;  // identically zero representative: order undefined
    }
    // multiplicity of zeta_{p^m}-1 = Phi_{p^m}-adic valuation of the
    // representative: a remainder of degree < deg Phi vanishes at zeta iff it
    // is the zero polynomial, so exact division decisions certify the order.
    Poly<Zp> phi = cyclotomic_rep(f.p, point_m, max_prec_for(f.p));
    Poly<Zp> g = f.rep;
    long o = 0;
    while (true) {
        if (g.is_zero_res()) return std::nullopt;  // identically zero to precision
        auto [q, r] = g.divrem(phi);
        if (!r.is_zero_res()) return o;
        g = q;
        ++o;
        if (o > (long)f.ring_size()) return std::nullopt;
    }
}

}  // namespace sharpflat
