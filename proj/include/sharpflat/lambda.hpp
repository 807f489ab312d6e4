#pragma once

#include <optional>
#include <vector>

#include "sharpflat/cyclo.hpp"
#include "sharpflat/padic.hpp"
#include "sharpflat/poly.hpp"

namespace sharpflat {

// Element of Lambda_n = Z_p[T]/((1+T)^{p^n} - 1), stored by its canonical
// representative of degree < p^n. Divisibility tests in the extraction
// algorithm run on these representatives.
struct LambdaElement {
    Poly<Zp> rep;
    uint64_t p = 3;
    int n = 0;

    LambdaElement() = default;
    LambdaElement(Poly<Zp> f, uint64_t pp, int level);

    size_t ring_size() const {
        size_t s = 1;
        for (int i = 0; i < n; ++i) s *= (size_t)p;
        return s;
    }

    LambdaElement operator+(const LambdaElement& o) const;
    LambdaElement operator-(const LambdaElement& o) const;
    LambdaElement operator-() const;
    LambdaElement operator*(const LambdaElement& o) const;
    LambdaElement scale(const Zp& s) const;

    bool is_zero_res() const { return rep.is_zero_res(); }
    bool congruent(const LambdaElement& o, int digits) const;

    // (1+T) |-> (1+T)^{-1}, the Iwasawa-algebra involution
    LambdaElement sigma() const;
    // multiply by (1+T)^k (k mod p^n)
    LambdaElement mul_group_like(long k) const;
};

// modulus polynomial (1+T)^{p^n} - 1 over Z_p at the given precision
Poly<Zp> lambda_modulus(uint64_t p, int n, int prec);

// Phi_{p^m}(1+T) as a polynomial in T
Poly<Zp> cyclotomic_rep(uint64_t p, int m, int prec);

// natural projection Lambda_n -> Lambda_{n-1}
LambdaElement project_pi(const LambdaElement& x);
// projection down several levels
LambdaElement project_to(const LambdaElement& x, int m);

// norm map nu: Lambda_{n-1} -> Lambda_n (lift times Phi_{p^n}(1+T))
LambdaElement norm_nu(const LambdaElement& x);

// (1+T)^u in Lambda_n (u taken mod p^n; negative u allowed)
LambdaElement group_like_power(uint64_t p, int n, long long u, int prec);

// T = zeta_{p^m} - 1 evaluation into the given cyclotomic field (m <= n)
CycloField::EvalResult eval_at_zeta(const LambdaElement& x, const CycloField& K, int m);

// Truncated power-series approximant of an element of Lambda (or Q tensor
// Lambda); the per-coefficient precision ledger is carried by each Zp.
struct SeriesApprox {
    std::vector<Zp> c;
    uint64_t p = 3;

    size_t order() const { return c.empty() ? 0 : c.size() - 1; }
    Zp coeff(size_t k) const;
    bool coeff_determined(size_t k) const { return k < c.size() && c[k].abs_prec() > 0; }
};

struct IwasawaInvariants {
    ValQ mu;
    long lambda = 0;
    bool operator==(const IwasawaInvariants& o) const { return mu == o.mu && lambda == o.lambda; }
};

// mu = min coefficient valuation, lambda = first index attaining it; only
// returned when the ledger certifies the minimum (Undetermined otherwise).
std::optional<IwasawaInvariants> iwasawa_invariants(const SeriesApprox& f);
std::optional<IwasawaInvariants> iwasawa_invariants(const LambdaElement& f);

SeriesApprox series_of(const LambdaElement& f);

// order of vanishing at T = 0 (point_m = -1) or T = zeta_{p^m} - 1 (m >= 1);
// derivatives via formal differentiation; certified or Undetermined.
std::optional<long> ord_at_point(const LambdaElement& f, int point_m);

}  // namespace sharpflat
