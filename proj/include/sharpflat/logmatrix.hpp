#pragma once

#include <array>
#include <functional>
#include <vector>

#include "sharpflat/hecke.hpp"
#include "sharpflat/lambda.hpp"
#include "sharpflat/poly.hpp"

namespace sharpflat {

// 2x2 matrix over any ring-ish type with +, -, *.
template <class T>
struct Mat2 {
    T a, b, c, d;  // [[a, b], [c, d]]

    Mat2 mul(const Mat2& o) const {
        return Mat2{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    T det() const { return a * d - b * c; }

    template <class F>
    auto map(F&& f) const {
        using U = decltype(f(a));
        return Mat2<U>{f(a), f(b), f(c), f(d)};
    }
};

template <class T>
std::pair<T, T> row_times(const std::pair<T, T>& v, const Mat2<T>& m) {
    return {v.first * m.a + v.second * m.c, v.first * m.b + v.second * m.d};
}

// ---- exact constant matrices over Zp ----

// C = [[ap, 1], [-eps p, 0]]
Mat2<Zp> mat_C(const HeckeData& h, int prec);
// A = [[ap, p], [-eps, 0]]
Mat2<Zp> mat_A(const HeckeData& h, int prec);
// Atilde = [[ap, 1], [-eps, 0]]
Mat2<Zp> mat_Atilde(const HeckeData& h, int prec);
// Atilde^{-1} = [[0, -1/eps], [1, ap/eps]]
Mat2<Zp> mat_Atilde_inv(const HeckeData& h, int prec);
// C^{-1} = adj(C)/(eps p): tracks the 1/p in the ledger
Mat2<Zp> mat_C_inv(const HeckeData& h, int prec);
// Y_j: Y_{2i} = p^{-i} A^{2i}, Y_{2i+1} = Y_{2i} Atilde (j may be negative)
Mat2<Zp> mat_Y(const HeckeData& h, long j, int prec);
// roots matrix [[-1, -1], [beta, alpha]] over the quadratic extension
Mat2<QuadExt> mat_roots(const HeckeData& h, int prec);

// ---- cyclotomic factors as Lambda_n / Laurent objects ----

// Phi_{p^i}(1+T) (uncompleted) or its completion
// Phi-hat = Phi * (1+T)^{-p^{i-1}(p-1)/2} (p = 2, i = 1: no completion).
Laurent<Zp> phi_factor(uint64_t p, int i, int prec, bool completed);
long phi_completion_shift(uint64_t p, int i);  // the exponent p^{i-1}(p-1)/2 (0 for p=2,i=1)

// \CCC_i = [[ap, 1], [-eps Phi_i, 0]] over Laurent<Zp>
Mat2<Laurent<Zp>> mat_CCC(const HeckeData& h, int i, int prec, bool completed);
// \CC_i = [[ap, Phi_i], [-eps, 0]] (the section-3 shape; \CCC_i Atilde^{-1} = Atilde^{-1} \CC_i)
Mat2<Laurent<Zp>> mat_CC(const HeckeData& h, int i, int prec, bool completed);

// ---- truncated-series machinery ----

// series matrix over QuadExt truncated to T-order d
using QSeries = Poly<QuadExt>;

struct LogProduct {
    Mat2<QSeries> value;     // the n-th partial product (completed or not)
    int n = 0;               // number of Chat factors
    std::vector<int> agree;  // per-T-coefficient digits of agreement with the previous partial
    bool ordinary_mode = false;  // right column undetermined in ordinary mode
};

// Partial products Chat_1...Chat_n C^{-(N+1)} roots, truncated to T-order d.
// Stops when consecutive partials agree to >= target digits on all kept
// coefficients (certified-stabilization window), or at n_cap.
LogProduct log_partial_product(const HeckeData& h, int d, int prec, bool completed, int target_digits,
                               int n_cap, bool ordinary_mode = false);

// det target (log_p(1+T)/T) * (beta-alpha)/(eps p)^2 (exponent 3 for p = 2),
// truncated to order d; the log factor via T * prod Phi_{p^i}/p.
QSeries det_log_target(const HeckeData& h, int d, int prec);

// Pollack half-logarithms truncated to order d: log^+ = (1/p) prod_{j>=1} Phi_{p^{2j}}/p,
// log^- with odd indices. Per-coefficient ledger from the omitted tail.
struct HalfLogs {
    Poly<Zp> plus, minus;
};
HalfLogs half_logs(uint64_t p, int d, int prec);

// W^+ = prod (1+T)^{-p^{2j-1}(p-1)}, W^- analogous (p = 2 carries an extra
// (1+T)^{-1}); truncated series to order d.
struct FeUnits {
    Poly<Zp> wplus, wminus;
};
FeUnits fe_units(uint64_t p, int d, int prec);
// the same units as exact group-likes in Lambda_n (p-adic limit exponents)
LambdaElement w_plus_lambda(uint64_t p, int n, int prec);
LambdaElement w_minus_lambda(uint64_t p, int n, int prec);
// partial exponents matching sigma of the finite product C_1...C_n (a_p = 0)
long long w_plus_partial_exponent(uint64_t p, int n);
long long w_minus_partial_exponent(uint64_t p, int n);

// Chat_i((1+T)^{-1}) = Chat_i(1+T) in Lambda_m for all i (p = 2, i = 1 carries
// the documented left factor diag(1, (1+T)^{-1})). Also reports the negative
// control: the uncompleted Phi is NOT invariant.
struct HatInvarianceReport {
    bool all_invariant = true;
    std::vector<int> failed_levels;
    bool uncompleted_noninvariant = true;  // negative control observed
};
HatInvarianceReport hat_invariance_check(const HeckeData& h, int n, int prec);

// Xi_n(zeta_{p^m}-1) = C^{-(n+2)} roots (p odd; n+3 for p = 2): the finite
// collapse of the tail of the logarithm matrix at a root of unity.
struct XiResult {
    Mat2<QuadExt> value;
    ValQ det_ord;  // ord of det (certificate det != 0)
};
XiResult xi_remainder(const HeckeData& h, int n, int m, int prec);

}  // namespace sharpflat
