#include "sharpflat/logmatrix.hpp"

#include <algorithm>
#include <cmath>

namespace sharpflat {

Mat2<Zp> mat_C(const HeckeData& h, int prec) {
    return Mat2<Zp>{Zp::from_int(h.p, h.ap, prec), Zp::one(h.p).cap_abs_prec(prec),
                    Zp::from_int(h.p, -(long long)h.eps * (long long)h.p, prec), Zp::zero(h.p)};
}

Mat2<Zp> mat_A(const HeckeData& h, int prec) {
    return Mat2<Zp>{Zp::from_int(h.p, h.ap, prec), Zp::from_int(h.p, (long long)h.p, prec),
                    Zp::from_int(h.p, -h.eps, prec), Zp::zero(h.p)};
}

Mat2<Zp> mat_Atilde(const HeckeData& h, int prec) {
    return Mat2<Zp>{Zp::from_int(h.p, h.ap, prec), Zp::one(h.p).cap_abs_prec(prec),
                    Zp::from_int(h.p, -h.eps, prec), Zp::zero(h.p)};
}

Mat2<Zp> mat_Atilde_inv(const HeckeData& h, int prec) {
    // [[0, -1/eps], [1, ap/eps]]
    Zp inv_eps = Zp::from_int(h.p, h.eps, prec);  // eps = +-1: self-inverse
    return Mat2<Zp>{Zp::zero(h.p), -inv_eps, Zp::one(h.p).cap_abs_prec(prec),
                    Zp::from_int(h.p, h.ap * h.eps, prec)};
}

Mat2<Zp> mat_C_inv(const HeckeData& h, int prec) {
    // adj(C)/det(C), det = eps p: [[0, -1], [eps p, ap]] / (eps p)
    Zp det = Zp::from_int(h.p, (long long)h.eps * (long long)h.p, prec + 2);
    return Mat2<Zp>{Zp::zero(h.p), (-Zp::one(h.p).cap_abs_prec(prec + 2)).div(det),
                    Zp::one(h.p).cap_abs_prec(prec + 2),
                    Zp::from_int(h.p, h.ap, prec + 2).div(det)};
}

Mat2<Zp> mat_Y(const HeckeData& h, long j, int prec) {
    // Y_{2i} = p^{-i} A^{2i}, Y_{2i+1} = Y_{2i} Atilde
    long i2 = j >= 0 ? j / 2 : (j - 1) / 2;  // floor(j/2)
    bool odd = (j - 2 * i2) == 1;
    Mat2<Zp> A = mat_A(h, prec + (int)std::abs(i2) * 2 + 2);
    Mat2<Zp> acc{Zp::one(h.p), Zp::zero(h.p), Zp::zero(h.p), Zp::one(h.p)};
    if (i2 >= 0) {
        for (long k = 0; k < 2 * i2; ++k) acc = acc.mul(A);
        Zp pi = Zp::from_int(h.p, 1, prec + (int)i2 * 2 + 2);
        for (long k = 0; k < i2; ++k) pi = pi.mul_pow_p(-1);
        acc = acc.map([&](const Zp& z) { return z * pi; });
    } else {
        // A^{-1} = adj(A)/det(A) = [[0, -eps], [1/p, eps ap / p]]
        int pr = prec + (int)(-i2) * 2 + 2;
        Mat2<Zp> Ainv{Zp::zero(h.p), Zp::from_int(h.p, -h.eps, pr),
                      Zp::one(h.p).cap_abs_prec(pr).mul_pow_p(-1),
                      Zp::from_int(h.p, (long long)h.eps * h.ap, pr).mul_pow_p(-1)};
        for (long k = 0; k < -2 * i2; ++k) acc = acc.mul(Ainv);
        Zp pi = Zp::one(h.p).cap_abs_prec(prec + (int)(-i2) * 2 + 2);
        for (long k = 0; k < -i2; ++k) pi = pi.mul_pow_p(1);
        acc = acc.map([&](const Zp& z) { return z * pi; });
    }
    if (odd) acc = acc.mul(mat_Atilde(h, prec));
    return acc;
}

Mat2<QuadExt> mat_roots(const HeckeData& h, int prec) {
    QuadExt a = QuadExt::alpha(h, prec);
    QuadExt b = QuadExt::beta(h, prec);
    QuadExt one = a.one_like();
    return Mat2<QuadExt>{-one, -one, b, a};
}

long phi_completion_shift(uint64_t p, int i) {
    if (p == 2 && i == 1) return 0;  // branch-cut exception
    long e = 1;
    for (int k = 0; k + 1 < i; ++k) e *= (long)p;
    return e * (long)(p - 1) / 2;
}

Laurent<Zp> phi_factor(uint64_t p, int i, int prec, bool completed) {
    Poly<Zp> phi = cyclotomic_rep(p, i, prec);
    return Laurent<Zp>(phi, completed ? phi_completion_shift(p, i) : 0);
}

Mat2<Laurent<Zp>> mat_CCC(const HeckeData& h, int i, int prec, bool completed) {
    Laurent<Zp> phi = phi_factor(h.p, i, prec, completed);
    Laurent<Zp> ap(Poly<Zp>::constant(Zp::from_int(h.p, h.ap, prec)));
    Laurent<Zp> one(Poly<Zp>::constant(Zp::one(h.p).cap_abs_prec(prec)));
    Laurent<Zp> zero;
    return Mat2<Laurent<Zp>>{ap, one, phi.scale(Zp::from_int(h.p, -h.eps, prec)), zero};
}

Mat2<Laurent<Zp>> mat_CC(const HeckeData& h, int i, int prec, bool completed) {
    Laurent<Zp> phi = phi_factor(h.p, i, prec, completed);
    Laurent<Zp> ap(Poly<Zp>::constant(Zp::from_int(h.p, h.ap, prec)));
    Laurent<Zp> meps(Poly<Zp>::constant(Zp::from_int(h.p, -h.eps, prec)));
    Laurent<Zp> zero;
    return Mat2<Laurent<Zp>>{ap, phi, meps, zero};
}

// ---- truncated series over QuadExt ----

// (1+T)^E truncated to order d: binomial series c_k = prod_{j<k} (E-j)/(j+1).
// The exponent enters as a Zp (binom(E, k) mod p^A only needs E mod p^{A + ord(k!)}),
// with slack for the p-part of d!.
static int binom_slack(uint64_t p, int d) {
    int slack = 2;
    for (long long f = (long long)p; f <= d; f *= (long long)p) slack += d / (int)f + 1;
    return slack;
}

static Poly<Zp> binom_series_zp(const Zp& E, int d, int prec) {
    uint64_t p = E.prime();
    int slack = binom_slack(p, d);
    Zp c = Zp::one(p).cap_abs_prec(prec + slack);
    Zp e = E.cap_abs_prec(prec + slack);
    Poly<Zp> out;
    out.c.push_back(c);
    for (int k = 1; k <= d; ++k) {
        c = c * (e - Zp::from_int(p, k - 1, prec + slack));
        c = c.div(Zp::from_int(p, k, prec + slack));
        out.c.push_back(c);
    }
    out.trim();
    return out;
}

static Poly<Zp> binom_series(uint64_t p, long long E, int d, int prec) {
    return binom_series_zp(Zp::from_int(p, E, prec + binom_slack(p, d)), d, prec);
}

// Phi_{p^i}(1+T) truncated to order d: sum_{t<p} (1+T)^{t p^{i-1}}
static Poly<Zp> phi_series(uint64_t p, int i, int d, int prec) {
    int wp = prec + binom_slack(p, d);
    Zp st = Zp::one(p).cap_abs_prec(wp);
    for (int j = 0; j + 1 < i; ++j) st = st * Zp::from_int(p, (long long)p, wp);
    Poly<Zp> acc;
    Zp e = Zp::zero(p).cap_abs_prec(wp);
    for (uint64_t t = 0; t < p; ++t) {
        acc = acc + binom_series_zp(e, d, prec);
        e = e + st;
    }
    return acc.truncate((size_t)d);
}

static QSeries qs_const(const QuadExt& v) { return QSeries::constant(v); }

static QSeries qs_trunc_mul(const QSeries& a, const QSeries& b, int d) {
    return (a * b).truncate((size_t)d);
}

static Mat2<QSeries> qs_mat_mul(const Mat2<QSeries>& A, const Mat2<QSeries>& B, int d) {
    return Mat2<QSeries>{qs_trunc_mul(A.a, B.a, d) + qs_trunc_mul(A.b, B.c, d),
                         qs_trunc_mul(A.a, B.b, d) + qs_trunc_mul(A.b, B.d, d),
                         qs_trunc_mul(A.c, B.a, d) + qs_trunc_mul(A.d, B.c, d),
                         qs_trunc_mul(A.c, B.b, d) + qs_trunc_mul(A.d, B.d, d)};
}

LogProduct log_partial_product(const HeckeData& h, int d, int prec, bool completed,
                               int target_digits, int n_cap, bool ordinary_mode) {
    QuadExt one = QuadExt::alpha(h, prec).one_like();
    QuadExt zero = one.zero_like();
    auto zp2q = [&](const Zp& z) { return QuadExt::from_zp(z, h); };

    auto chat_series = [&](int i) {
        Poly<Zp> phi = phi_series(h.p, i, d, prec);
        if (completed) {
            long s = phi_completion_shift(h.p, i);
            if (s) phi = (phi * binom_series(h.p, -s, d, prec)).truncate((size_t)d);
        }
        QSeries phis;
        for (auto& c : phi.c) phis.c.push_back(zp2q(c));
        QuadExt meps = zp2q(Zp::from_int(h.p, -h.eps, prec));
        return Mat2<QSeries>{qs_const(zp2q(Zp::from_int(h.p, h.ap, prec))), qs_const(one),
                             phis.scale(meps), qs_const(zero)};
    };

    Mat2<QuadExt> Cinv_c = mat_C_inv(h, prec).map(zp2q);
    Mat2<QSeries> Cinv = Cinv_c.map([&](const QuadExt& v) { return qs_const(v); });
    Mat2<QSeries> roots = mat_roots(h, prec).map([&](const QuadExt& v) { return qs_const(v); });

    int Noff = (h.p == 2) ? 3 : 2;  // N+1 = n + (2 or 3)

    auto full = [&](const Mat2<QSeries>& q, int n) {
        Mat2<QSeries> r = q;
        for (int k = 0; k < n + Noff; ++k) r = qs_mat_mul(r, Cinv, d);
        return qs_mat_mul(r, roots, d);
    };

    Mat2<QSeries> Q{qs_const(one), qs_const(zero), qs_const(zero), qs_const(one)};
    Mat2<QSeries> prev;
    LogProduct out;
    out.ordinary_mode = ordinary_mode;
    std::vector<int> agree((size_t)d + 1, 0);
    for (int n = 1; n <= n_cap; ++n) {
        Q = qs_mat_mul(Q, chat_series(n), d);
        Mat2<QSeries> cur = full(Q, n);
        if (n > 1) {
            bool ok = true;
            for (int k = 0; k <= d; ++k) {
                int best = 1 << 20;
                auto upd = [&](const QSeries& A, const QSeries& B) {
                    QuadExt x = A.coeff((size_t)k, one) - B.coeff((size_t)k, one);
                    int digits;
                    if (x.is_zero_res())
                        digits = x.abs_prec();
                    else {
                        auto ox = x.x().ord();
                        auto oy = x.y().ord();
                        long mo = std::min(ox ? *ox : x.x().abs_prec(), oy ? *oy : x.y().abs_prec());
                        digits = (int)mo;
                    }
                    best = std::min(best, digits);
                };
                upd(cur.a, prev.a);
                upd(cur.c, prev.c);
                if (!ordinary_mode) {
                    upd(cur.b, prev.b);
                    upd(cur.d, prev.d);
                }
                agree[(size_t)k] = best;
                if (best < target_digits) ok = false;
            }
            out.value = cur;
            out.n = n;
            out.agree = agree;
            if (ok) return out;
        }
        prev = cur;
    }
    out.value = prev;
    out.n = n_cap;
    out.agree = agree;
    return out;
}

QSeries det_log_target(const HeckeData& h, int d, int prec) {
    // (log_p(1+T)/T) (beta - alpha)/(eps p)^(2 or 3)
    QuadExt one = QuadExt::alpha(h, prec).one_like();
    auto zp2q = [&](const Zp& z) { return QuadExt::from_zp(z, h); };
    // log_p(1+T)/T = prod_{i>=1} Phi_{p^i}(1+T)/p, truncated: include factors
    // until the tail cannot move coefficients below the working precision.
    QSeries acc = QSeries::constant(one);
    int icap = prec + 4;
    {
        double lg = std::log((double)std::max(2, d)) / std::log((double)h.p);
        icap += (int)lg + 2;
    }
    for (int i = 1; i <= icap; ++i) {
        Poly<Zp> phi = phi_series(h.p, i, d, prec + 2);
        QSeries f;
        for (auto& c : phi.c) f.c.push_back(zp2q(c.mul_pow_p(-1)));
        acc = (acc * f).truncate((size_t)d);
    }
    QuadExt alpha = QuadExt::alpha(h, prec), beta = QuadExt::beta(h, prec);
    QuadExt fac = beta - alpha;
    int e = (h.p == 2) ? 3 : 2;
    QuadExt den = zp2q(Zp::from_int(h.p, h.eps, prec + e + 2).mul_pow_p(1)).pow(e);
    fac = fac * den.inv();
    return acc.scale(fac);
}

HalfLogs half_logs(uint64_t p, int d, int prec) {
    // enough factors that the omitted tail is 1 + O(p^prec) on T^0..T^d
    int icap = 2 * (prec + 4 + (int)(std::log((double)std::max(2, d)) / std::log((double)p)));
    Zp one = Zp::one(p).cap_abs_prec(prec + 4);
    Poly<Zp> plus = Poly<Zp>::constant(one.mul_pow_p(-1));
    Poly<Zp> minus = Poly<Zp>::constant(one.mul_pow_p(-1));
    for (int i = 1; i <= icap; ++i) {
        Poly<Zp> f = phi_series(p, i, d, prec + 4);
        for (auto& c : f.c) c = c.mul_pow_p(-1);
        if (i % 2 == 0)
            plus = (plus * f).truncate((size_t)d);
        else
            minus = (minus * f).truncate((size_t)d);
    }
    return {plus, minus};
}

FeUnits fe_units(uint64_t p, int d, int prec) {
    // W^+ = prod_{j>=1} (1+T)^{-p^{2j-1}(p-1)}; truncate once exponents are
    // divisible by p^{prec + margin}
    Zp one = Zp::one(p).cap_abs_prec(prec + 4);
    auto inv_pow = [&](long long s) { return binom_series(p, -s, d, prec + 4); };
    Poly<Zp> wp = Poly<Zp>::constant(one), wm = Poly<Zp>::constant(one);
    long long pw = (long long)p;  // p^{2j-1}
    for (int j = 1; 2 * j - 1 <= prec + 6; ++j) {
        wp = (wp * inv_pow(pw * (long long)(p - 1))).truncate((size_t)d);
        long long pw2 = pw / (long long)p;  // p^{2j-2}
        if (p == 2 && j == 1) {
            // W^- for p = 2: extra (1+T)^{-1}, product starts at j = 2
            wm = (wm * inv_pow(1)).truncate((size_t)d);
        } else {
            wm = (wm * inv_pow(pw2 * (long long)(p - 1))).truncate((size_t)d);
        }
        pw *= (long long)p * (long long)p;
    }
    return {wp, wm};
}

long long w_plus_partial_exponent(uint64_t p, int n) {
    long long s = 0, pw = (long long)p;
    for (int j = 1; 2 * j <= n; ++j) {
        s += pw * (long long)(p - 1);
        pw *= (long long)p * (long long)p;
    }
    return -s;
}

long long w_minus_partial_exponent(uint64_t p, int n) {
    long long s = 0, pw = 1;
    for (int j = 1; 2 * j - 1 <= n; ++j) {
        if (p == 2 && j == 1)
            s += 1;
        else
            s += pw * (long long)(p - 1);
        pw *= (long long)p * (long long)p;
    }
    return -s;
}

LambdaElement w_plus_lambda(uint64_t p, int n, int prec) {
    // limit exponent: -(p-1) sum p^{2j-1} = p/(p+1) p-adically
    // in Lambda_n only the exponent mod p^n matters; use partial sums far
    // enough that they equal the limit mod p^n
    long long s = 0, pw = (long long)p, pn = 1;
    for (int i = 0; i < n; ++i) pn *= (long long)p;
    for (int j = 1; 2 * j - 1 <= 2 * n + 2; ++j) {
        s = (s + pw % pn * (long long)(p - 1)) % pn;
        pw = pw * (long long)p % pn * (long long)p % pn;
    }
    return group_like_power(p, n, -s, prec);
}

LambdaElement w_minus_lambda(uint64_t p, int n, int prec) {
    long long s = 0, pw = 1, pn = 1;
    for (int i = 0; i < n; ++i) pn *= (long long)p;
    for (int j = 1; 2 * j - 1 <= 2 * n + 2; ++j) {
        if (p == 2 && j == 1)
            s = (s + 1) % pn;
        else
            s = (s + pw % pn * (long long)(p - 1)) % pn;
        pw = pw * (long long)p % pn * (long long)p % pn;
    }
    return group_like_power(p, n, -s, prec);
}

HatInvarianceReport hat_invariance_check(const HeckeData& h, int n, int prec) {
    HatInvarianceReport rep;
    for (int i = 1; i <= n; ++i) {
        // compare Phi-hat as Lambda_n elements under sigma
        Poly<Zp> phi = cyclotomic_rep(h.p, i, prec);
        long s = phi_completion_shift(h.p, i);
        LambdaElement ph(phi, h.p, n);
        LambdaElement phat = ph.mul_group_like(-(long)s);
        LambdaElement lhs = phat.sigma();
        LambdaElement rhs = phat;
        if (h.p == 2 && i == 1) rhs = phat.mul_group_like(-1);  // the documented correction
        if (!(lhs - rhs).is_zero_res()) {
            rep.all_invariant = false;
            rep.failed_levels.push_back(i);
        }
        // negative control at i = 1: uncompleted Phi is not invariant (p odd)
        if (i == 1 && !(h.p == 2)) {
            LambdaElement bad = ph.sigma() - ph;
            if (bad.is_zero_res()) rep.uncompleted_noninvariant = false;
        }
    }
    return rep;
}

XiResult xi_remainder(const HeckeData& h, int n, int m, int prec) {
    if (m > n) throw LevelUnderflow("xi_remainder needs m <= n");
    if (!h.supersingular()) throw UnknownBranch("xi_remainder: supersingular only");
    int Noff = (h.p == 2) ? 3 : 2;
    int extra_prec = prec + (n + Noff) + 4;
    Mat2<Zp> Cinv = mat_C_inv(h, extra_prec);
    Mat2<Zp> acc{Zp::one(h.p), Zp::zero(h.p), Zp::zero(h.p), Zp::one(h.p)};
    for (int k = 0; k < n + Noff; ++k) acc = acc.mul(Cinv);
    auto zp2q = [&](const Zp& z) { return QuadExt::from_zp(z, h); };
    Mat2<QuadExt> res = acc.map(zp2q).mul(mat_roots(h, extra_prec));
    // det = (eps p)^{-(n+Noff)} (beta - alpha)
    QuadExt det = res.det();
    XiResult out;
    out.value = res;
    out.det_ord = ord_quad(det);
    return out;
}

}  // namespace sharpflat
