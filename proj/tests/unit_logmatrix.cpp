#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sharpflat/logmatrix.hpp"

using namespace sharpflat;

TEST_CASE("cyclotomic polynomial in T") {
    // p = 3, i = 1: 3 + 3T + T^2
    Poly<Zp> f = cyclotomic_rep(3, 1, 20);
    REQUIRE(f.c.size() == 3);
    CHECK(f.c[0].int_residue(4) == 3);
    CHECK(f.c[1].int_residue(4) == 3);
    CHECK(f.c[2].int_residue(4) == 1);
    // constant term p for all i
    for (uint64_t p : {2ull, 3ull, 5ull})
        for (int i = 1; i <= 3; ++i)
            CHECK(cyclotomic_rep(p, i, 15).c[0].int_residue(1) == p % pow_u128(p, 1));
    // degree p^i - p^{i-1}
    CHECK(cyclotomic_rep(3, 3, 15).deg() == 27 - 9);
}

TEST_CASE("completed cyclotomic") {
    // p = 2, i = 1: uncompleted by fiat
    CHECK(phi_completion_shift(2, 1) == 0);
    CHECK(phi_completion_shift(2, 2) == 1);
    CHECK(phi_completion_shift(3, 1) == 1);
    CHECK(phi_completion_shift(3, 2) == 3);
    // Phi-hat vanishes at its own level: the numerator is Phi
    Laurent<Zp> ph = phi_factor(3, 2, 15, true);
    CHECK(ph.shift == 3);
    CHECK((ph.num - cyclotomic_rep(3, 2, 15)).is_zero_res());
}

TEST_CASE("constant matrices and determinants") {
    HeckeData h{3, 0, 1, 0, 1};
    // det CC-hat_i = eps Phi-hat (as Laurent objects): det [[ap, Phi],[-eps, 0]] = eps Phi
    Mat2<Laurent<Zp>> cc = mat_CC(h, 2, 20, true);
    Laurent<Zp> det = cc.a * cc.d - cc.b * cc.c;
    Laurent<Zp> target = phi_factor(3, 2, 20, true);
    CHECK((det - target).is_zero_res());
    // ap = 0: CCC_i CCC_{i+1} is diagonal with entries -Phi_{i+1}, -Phi_i
    Mat2<Laurent<Zp>> c1 = mat_CCC(h, 1, 20, false);
    Mat2<Laurent<Zp>> c2 = mat_CCC(h, 2, 20, false);
    Mat2<Laurent<Zp>> pr = c1.mul(c2);
    CHECK(pr.b.is_zero_res());
    CHECK(pr.c.is_zero_res());
    CHECK((pr.a + phi_factor(3, 2, 20, false)).is_zero_res());
    CHECK((pr.d + phi_factor(3, 1, 20, false)).is_zero_res());
    // Y_0 = I, Y_1 = Atilde
    Mat2<Zp> y0 = mat_Y(h, 0, 20);
    CHECK((y0.a - Zp::one(3)).is_zero_res());
    CHECK(y0.b.is_zero_res());
    CHECK(y0.c.is_zero_res());
    CHECK((y0.d - Zp::one(3)).is_zero_res());
    Mat2<Zp> y1 = mat_Y(h, 1, 20);
    Mat2<Zp> at = mat_Atilde(h, 20);
    CHECK((y1.a - at.a).is_zero_res());
    CHECK((y1.b - at.b).is_zero_res());
    CHECK((y1.c - at.c).is_zero_res());
    CHECK((y1.d - at.d).is_zero_res());
    // C C^{-1} = I with the 1/p tracked
    HeckeData h2{3, 1, -1, 0, 1};
    Mat2<Zp> C = mat_C(h2, 20);
    Mat2<Zp> Ci = mat_C_inv(h2, 20);
    Mat2<Zp> I = C.mul(Ci);
    CHECK((I.a - Zp::one(3)).is_zero_res());
    CHECK(I.b.is_zero_res());
    CHECK(I.c.is_zero_res());
    CHECK((I.d - Zp::one(3)).is_zero_res());
}

TEST_CASE("diagonalization: roots diag(alpha^m, beta^m) = C^m roots") {
    for (long long ap : {0ll, 1ll, -3ll}) {
        HeckeData h{3, ap, 1, 0, 1};
        QuadExt a = QuadExt::alpha(h, 25), b = QuadExt::beta(h, 25);
        Mat2<QuadExt> R = mat_roots(h, 25);
        for (int m = -3; m <= 3; ++m) {
            Mat2<QuadExt> lhs{R.a * a.pow(m), R.b * b.pow(m), R.c * a.pow(m), R.d * b.pow(m)};
            // C^m over the extension
            Mat2<QuadExt> Cm{a.one_like(), a.zero_like(), a.zero_like(), a.one_like()};
            auto zp2q = [&](const Zp& z) { return QuadExt::from_zp(z, h); };
            Mat2<QuadExt> C = m >= 0 ? mat_C(h, 25).map(zp2q) : mat_C_inv(h, 25).map(zp2q);
            for (int k = 0; k < std::abs(m); ++k) Cm = Cm.mul(C);
            Mat2<QuadExt> rhs = Cm.mul(R);
            CHECK(lhs.a.congruent(rhs.a, 15));
            CHECK(lhs.b.congruent(rhs.b, 15));
            CHECK(lhs.c.congruent(rhs.c, 15));
            CHECK(lhs.d.congruent(rhs.d, 15));
        }
    }
}

TEST_CASE("half-logs: value at 0 and the a_p = 0 decomposition") {
    for (uint64_t p : {3ull, 5ull}) {
        HalfLogs hl = half_logs(p, 12, 12);
        // log+(0) = 1/p
        CHECK(*hl.plus.c[0].ord() == -1);
        Zp v0 = hl.plus.c[0].mul_pow_p(1);
        CHECK(v0.congruent(Zp::one(p), 10));
    }
    // partial Log product (ap = 0) = (1/eps) [[log+, log+], [alpha log-, beta log-]]
    HeckeData h{3, 0, 1, 0, 1};
    int d = 14;
    LogProduct lp = log_partial_product(h, d, 20, false, 6, 24);
    HalfLogs hl = half_logs(3, d, 20);
    QuadExt alpha = QuadExt::alpha(h, 20), beta = QuadExt::beta(h, 20);
    QuadExt one = alpha.one_like();
    for (int k = 0; k <= d; ++k) {
        int win = std::min(6, lp.agree[(size_t)k]);
        if (win <= 0) continue;
        QuadExt lplus = QuadExt::from_zp(hl.plus.coeff((size_t)k, Zp::zero(3)), h);
        QuadExt lminus = QuadExt::from_zp(hl.minus.coeff((size_t)k, Zp::zero(3)), h);
        CHECK(lp.value.a.coeff((size_t)k, one).congruent(lplus, win));
        CHECK(lp.value.b.coeff((size_t)k, one).congruent(lplus, win));
        CHECK(lp.value.c.coeff((size_t)k, one).congruent(lminus * alpha, win));
        CHECK(lp.value.d.coeff((size_t)k, one).congruent(lminus * beta, win));
    }
}

TEST_CASE("fe units and the half-log functional equation") {
    for (uint64_t p : {2ull, 3ull, 5ull}) {
        int d = 16, prec = 12;
        FeUnits w = fe_units(p, d, prec);
        // W(0) = 1 (group-like at T = 0)
        CHECK(w.wplus.c[0].congruent(Zp::one(p), prec - 1));
        CHECK(w.wminus.c[0].congruent(Zp::one(p), prec - 1));
        HalfLogs hl = half_logs(p, d, prec);
        // compose log^{+-} with T -> (1+T)^{-1} - 1 (truncated substitution)
        Zp one = Zp::one(p).cap_abs_prec(prec + 2);
        Poly<Zp> sub;  // (1+T)^{-1} - 1 to order d
        for (int k = 1; k <= d; ++k) sub.c.push_back(Zp::zero(p));
        {
            Poly<Zp> inv1;
            for (int k = 0; k <= d; ++k) inv1.c.push_back(k % 2 == 0 ? one : -one);
            sub = inv1;
            sub.c[0] = sub.c[0] - one;
        }
        auto compose = [&](const Poly<Zp>& f) {
            Poly<Zp> acc;
            for (long i = f.deg(); i >= 0; --i) {
                acc = (acc * sub).truncate((size_t)d);
                acc = acc + Poly<Zp>::constant(f.c[(size_t)i]);
            }
            return acc;
        };
        Poly<Zp> lhsp = (hl.plus * w.wplus).truncate((size_t)d);
        Poly<Zp> rhsp = compose(hl.plus);
        Poly<Zp> lhsm = (hl.minus * w.wminus).truncate((size_t)d);
        Poly<Zp> rhsm = compose(hl.minus);
        int window = prec - 3;  // the truncated tails cost a few digits
        bool plus_ok = true, minus_ok = true, neg_control = false;
        for (int k = 0; k <= d; ++k) {
            Zp model = Zp::zero(p);
            Zp dp = lhsp.coeff((size_t)k, model) - rhsp.coeff((size_t)k, model);
            Zp dm = lhsm.coeff((size_t)k, model) - rhsm.coeff((size_t)k, model);
            if (!(dp.is_zero_res() || (dp.ord() && *dp.ord() >= window))) plus_ok = false;
            if (!(dm.is_zero_res() || (dm.ord() && *dm.ord() >= window))) minus_ok = false;
            // negative control: without W the identity must fail visibly
            Zp bad = hl.plus.coeff((size_t)k, model) - rhsp.coeff((size_t)k, model);
            if (!bad.is_zero_res() && bad.ord() && *bad.ord() < window) neg_control = true;
        }
        CHECK(plus_ok);
        CHECK(minus_ok);
        CHECK(neg_control);
    }
}

TEST_CASE("hat invariance under (1+T) -> (1+T)^{-1}") {
    HeckeData h3{3, -3, 1, 37, 1};
    HatInvarianceReport r3 = hat_invariance_check(h3, 3, 18);
    CHECK(r3.all_invariant);
    CHECK(r3.uncompleted_noninvariant);
    HeckeData h2{2, 0, 1, 0, 1};
    HatInvarianceReport r2 = hat_invariance_check(h2, 3, 18);
    CHECK(r2.all_invariant);  // with the documented diag(1, (1+T)^{-1}) fix at i = 1
}

TEST_CASE("xi remainder at roots of unity") {
    HeckeData h{3, 0, 1, 0, 1};
    for (int m : {0, 1, 2}) {
        XiResult xi = xi_remainder(h, 2, m, 12);
        CHECK(xi.det_ord.is_finite());
    }
    // explicit value: p = 3, ap = 0, n = 2, m = 1: C^{-4} roots = (1/9) roots
    XiResult xi = xi_remainder(h, 2, 1, 12);
    QuadExt alpha = QuadExt::alpha(h, 20), beta = QuadExt::beta(h, 20);
    QuadExt ninth = QuadExt::from_zp(Zp::from_rational(3, 1, 9, 20), h);
    CHECK(xi.value.a.congruent(-ninth, 8));
    CHECK(xi.value.b.congruent(-ninth, 8));
    CHECK(xi.value.c.congruent(beta * ninth, 8));
    CHECK(xi.value.d.congruent(alpha * ninth, 8));
    // ordinary data is rejected
    HeckeData ho{3, 1, 1, 0, 1};
    CHECK_THROWS_AS(xi_remainder(ho, 2, 1, 12), UnknownBranch);
}

TEST_CASE("det of the partial log product (smoke, p = 3, d = 9)") {
    HeckeData h{3, -3, 1, 37, 1};
    int d = 9;
    LogProduct lp = log_partial_product(h, d, 24, false, 6, 20);
    QSeries target = det_log_target(h, d, 24);
    QSeries det = (lp.value.a * lp.value.d - lp.value.b * lp.value.c).truncate((size_t)d);
    QuadExt one = QuadExt::alpha(h, 24).one_like();
    for (int k = 0; k <= d; ++k) {
        int win = std::min(5, lp.agree[(size_t)k]);
        if (win <= 0) continue;
        CHECK(det.coeff((size_t)k, one).congruent(target.coeff((size_t)k, one), win));
    }
}
