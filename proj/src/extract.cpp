#include "sharpflat/extract.hpp"

#include <algorithm>

#include "sharpflat/tropical.hpp"

namespace sharpflat {

namespace {

// divide a Laurent element exactly by Phi-hat_{p^i}; DivisionRemainder on failure
Laurent<Zp> div_phi(const Laurent<Zp>& y, uint64_t p, int i, bool completed, int* min_prec) {
    Poly<Zp> phi = cyclotomic_rep(p, i, max_prec_for(p));
    auto [q, r] = y.num.divrem(phi);
    if (!r.is_zero_res()) throw DivisionRemainder(i);
    long s = completed ? phi_completion_shift(p, i) : 0;
    if (min_prec) {
        for (auto& c : q.c) *min_prec = std::min(*min_prec, c.abs_prec());
    }
    return Laurent<Zp>(q, y.shift - s);
}

}  // namespace

std::pair<Laurent<Zp>, Laurent<Zp>> extract_raw(const Poly<Zp>& Qn1, const Poly<Zp>& Qn,
                                                const HeckeData& h, int n, bool completed,
                                                ExtractionTrace* trace) {
    uint64_t p = h.p;
    Zp ap = Zp::from_int(p, h.ap, max_prec_for(p));
    Zp eps_inv = Zp::from_int(p, h.eps, max_prec_for(p));  // eps = +-1, self-inverse
    // state (x, y) = (qtilde_{i+1}, q_i); start (Q_{n+1}, Q_n)
    Laurent<Zp> x(Qn1, 0);
    Laurent<Zp> y(Qn, 0);
    for (int i = n; i >= 1; --i) {
        int minp = 1 << 20;
        Laurent<Zp> t = div_phi(y, p, i, completed, &minp);
        // (x, y) <- (t, (ap t - x)/eps)
        Laurent<Zp> ny = (t.scale(ap) - x).scale(eps_inv);
        if (trace) trace->steps.push_back({i, t.num.deg(), true, minp});
        x = t;
        y = ny;
    }
    // Upsilon = (qtilde_1, q_0) Atilde = (ap qtilde_1 - eps q_0, qtilde_1)
    Laurent<Zp> u1 = x.scale(ap) - y.scale(Zp::from_int(p, h.eps, max_prec_for(p)));
    Laurent<Zp> u2 = x;
    return {u1, u2};
}

SharpFlatPair extract(const LambdaElement& theta_n, const LambdaElement& nu_theta_nm1,
                      const HeckeData& h, bool completed, ExtractionTrace* trace) {
    uint64_t p = h.p;
    int n = theta_n.n;
    auto [u1, u2] = extract_raw(theta_n.rep, nu_theta_nm1.rep, h, n, completed, trace);
    auto reduce = [&](const Laurent<Zp>& f) {
        size_t pn = 1;
        for (int k = 0; k < n; ++k) pn *= (size_t)p;
        long s = f.shift % (long)pn;
        if (s < 0) s += (long)pn;
        Zp one = Zp::one(p);
        Poly<Zp> g = f.num * one_plus_T_pow((size_t)(((long)pn - s) % (long)pn), one);
        return LambdaElement(g, p, n);
    };
    SharpFlatPair out;
    out.sharp = reduce(u1);
    out.flat = reduce(u2);
    out.completed = completed;
    out.h = h;
    out.theta_n = theta_n;
    out.nu_theta_nm1 = nu_theta_nm1;
    return out;
}

SharpFlatPair extract_from_table(const ModularSymbolTable& t, int i, int n, int prec, bool completed,
                                 ExtractionTrace* trace) {
    LambdaElement th = build_theta(t, i, n, prec);
    LambdaElement nth = norm_nu(build_theta(t, i, n - 1, prec));
    SharpFlatPair pair = extract(th, nth, t.h, completed, trace);
    pair.tame_i = i;
    return pair;
}

std::pair<Laurent<Zp>, Laurent<Zp>> forward_compose_raw(const Poly<Zp>& u1, const Poly<Zp>& u2,
                                                        const HeckeData& h, int n, bool completed) {
    uint64_t p = h.p;
    Zp ap = Zp::from_int(p, h.ap, max_prec_for(p));
    Zp meps = Zp::from_int(p, -h.eps, max_prec_for(p));
    Laurent<Zp> x(u1, 0), y(u2, 0);
    for (int i = 1; i <= n; ++i) {
        // (x, y) <- (x, y) [[ap, 1], [-eps Phi-hat_i, 0]] = (ap x - eps Phi-hat y, x)
        Laurent<Zp> phi(cyclotomic_rep(p, i, max_prec_for(p)),
                        completed ? phi_completion_shift(p, i) : 0);
        Laurent<Zp> nx = x.scale(ap) + (phi * y).scale(meps);
        y = x;
        x = nx;
    }
    // * Atilde^{-1} = [[0, -1/eps], [1, ap/eps]]
    Zp epsz = Zp::from_int(p, h.eps, max_prec_for(p));
    Laurent<Zp> ox = y;
    Laurent<Zp> oy = (x.scale(-Zp::one(p)) + y.scale(ap)).scale(epsz);
    return {ox, oy};
}

std::pair<LambdaElement, LambdaElement> forward_compose(const LambdaElement& u1,
                                                        const LambdaElement& u2, const HeckeData& h,
                                                        bool completed, bool* nu_image_certified) {
    int n = u1.n;
    auto [x, y] = forward_compose_raw(u1.rep, u2.rep, h, n, completed);
    auto reduce = [&](const Laurent<Zp>& f) {
        size_t pn = u1.ring_size();
        long s = f.shift % (long)pn;
        if (s < 0) s += (long)pn;
        Zp one = Zp::one(h.p);
        Poly<Zp> g = f.num * one_plus_T_pow((size_t)(((long)pn - s) % (long)pn), one);
        return LambdaElement(g, h.p, n);
    };
    LambdaElement a = reduce(x), b = reduce(y);
    if (nu_image_certified) {
        // the second output must be divisible by Phi_{p^n} (the image of nu);
        // check via pi o nu = p: b = nu(c) iff its projection vanishes... the
        // direct certificate: exact division by Phi_{p^n} on the representative
        Poly<Zp> phi = cyclotomic_rep(h.p, n, max_prec_for(h.p));
        auto [q, r] = b.rep.divrem(phi);
        (void)q;
        *nu_image_certified = r.is_zero_res();
    }
    return {a, b};
}

StableSeries extract_stable(const ModularSymbolTable& t, int i, int prec, bool completed) {
    StableSeries out;
    int top = theta_top(t);
    if (top < 1) throw IncompleteLevel("need at least theta_0, theta_1");
    std::vector<SharpFlatPair> pairs;
    for (int n = 1; n <= top; ++n) {
        pairs.push_back(extract_from_table(t, i, n, prec, completed));
        out.levels.push_back(n);
    }
    out.top = pairs.back();
    size_t d = out.top.sharp.ring_size();
    auto build = [&](bool sharp) {
        SeriesApprox s;
        s.p = t.h.p;
        for (size_t k = 0; k < d; ++k) {
            const LambdaElement& last = sharp ? pairs.back().sharp : pairs.back().flat;
            Zp model = Zp::zero(t.h.p);
            Zp cur = last.rep.coeff(k, model);
            int agree = 0;
            if (pairs.size() >= 2) {
                const LambdaElement& prevE = sharp ? pairs[pairs.size() - 2].sharp
                                                   : pairs[pairs.size() - 2].flat;
                Zp diff = cur - prevE.rep.coeff(k, model);
                auto o = diff.ord();
                agree = o ? (int)*o : diff.abs_prec();
            }
            // observed-stabilization ledger: certified digits = agreement depth
            s.c.push_back(cur.cap_abs_prec(std::max(0, std::min(agree, cur.abs_prec()))));
        }
        return s;
    };
    out.sharp = build(true);
    out.flat = build(false);
    return out;
}

CheckReport main_theorem_check(const ModularSymbolTable& t, int i, int n, int prec, int digits) {
    CheckReport rep;
    uint64_t p = t.h.p;
    int N = (p == 2) ? n + 2 : n + 1;
    int wprec = prec + 2 * (N + 3);
    // LHS: the Riemann sums via the Lemma's matrix route
    RiemannSums lhs = riemann_sum_L(t, i, N, wprec, false);
    // RHS: -Upsilon Chat_1..Chat_n C^{-(N+1)} roots over QuadExt in Lambda_n
    SharpFlatPair pair = extract_from_table(t, i, n, wprec, true);
    auto lift = [&](const LambdaElement& f) {
        Poly<QuadExt> g;
        for (auto& c : f.rep.c) g.c.push_back(QuadExt::from_zp(c, t.h));
        g.trim();
        return g;
    };
    QuadExt one = QuadExt::alpha(t.h, wprec).one_like();
    size_t pn = pair.sharp.ring_size();
    Poly<QuadExt> mod;  // (1+T)^{p^n} - 1 over QuadExt
    mod = one_plus_T_pow(pn, one);
    mod.c[0] = mod.c[0] - one;
    mod.trim();
    auto redq = [&](Poly<QuadExt> f) { return f.divrem(mod).second; };

    Poly<QuadExt> v1 = lift(pair.sharp), v2 = lift(pair.flat);
    for (int j = 1; j <= n; ++j) {
        // (v1, v2) * Chat_j, with Phi-hat reduced into Lambda_n over QuadExt
        Poly<Zp> phi = cyclotomic_rep(p, j, wprec);
        long s = phi_completion_shift(p, j);
        Zp onez = Zp::one(p);
        Poly<Zp> ph = phi * one_plus_T_pow((size_t)(((long)pn - (s % (long)pn)) % (long)pn), onez);
        LambdaElement phl(ph, p, n);
        Poly<QuadExt> phq = lift(phl);
        QuadExt apq = QuadExt::from_zp(Zp::from_int(p, t.h.ap, wprec), t.h);
        QuadExt mepsq = QuadExt::from_zp(Zp::from_int(p, -t.h.eps, wprec), t.h);
        Poly<QuadExt> nv1 = redq(v1.scale(apq) + (phq * v2).scale(mepsq));
        v2 = v1;
        v1 = nv1;
    }
    // C^{-(N+1)}
    Mat2<Zp> Cinv = mat_C_inv(t.h, wprec);
    for (int k = 0; k < N + 1; ++k) {
        Poly<QuadExt> nv1 = v1.scale(QuadExt::from_zp(Cinv.a, t.h)) +
                            v2.scale(QuadExt::from_zp(Cinv.c, t.h));
        Poly<QuadExt> nv2 = v1.scale(QuadExt::from_zp(Cinv.b, t.h)) +
                            v2.scale(QuadExt::from_zp(Cinv.d, t.h));
        v1 = nv1;
        v2 = nv2;
    }
    // * roots, then global sign -1
    Mat2<QuadExt> R = mat_roots(t.h, wprec);
    Poly<QuadExt> w1 = v1.scale(R.a) + v2.scale(R.c);
    Poly<QuadExt> w2 = v1.scale(R.b) + v2.scale(R.d);
    w1 = redq(-w1);
    w2 = redq(-w2);
    Poly<QuadExt> l1 = redq(lhs.Lalpha), l2 = redq(lhs.Lbeta);
    bool ordinary = t.h.ordinary();
    rep.pass = true;
    int cert = 1 << 20;
    auto cmp = [&](const Poly<QuadExt>& A, const Poly<QuadExt>& B) {
        for (size_t k = 0; k < pn; ++k) {
            QuadExt d = A.coeff(k, one) - B.coeff(k, one);
            int have = d.abs_prec();
            cert = std::min(cert, have);
            if (have >= digits && !d.congruent(d.zero_like(), digits)) rep.pass = false;
        }
    };
    cmp(l1, w1);
    if (!ordinary) cmp(l2, w2);  // beta-column only in the supersingular case
    rep.certified_digits = std::min(cert, (int)1e9);
    if (rep.certified_digits < digits) {
        rep.pass = false;
        rep.detail = "insufficient certified digits";
    }
    return rep;
}

SpecialValueReport special_value_table_check(const SharpFlatPair& pair, int digits) {
    SpecialValueReport rep;
    const HeckeData& h = pair.h;
    uint64_t p = h.p;
    Zp model = Zp::zero(p);
    Zp Ls = pair.sharp.rep.coeff(0, model);
    Zp Lf = pair.flat.rep.coeff(0, model);
    long long a = h.ap;
    long long cs, cf;  // identity: cs * L_sharp(0) = cf * L_flat(0)
    if (p != 2) {
        if (pair.tame_i == 0) {
            cs = 2 - a;
            cf = -a * a + 2 * a + (long long)p - 1;
            if (cs == 0) {
                rep.degenerate_flag = true;
                rep.which_column = "flat (table factor 2 - ap vanishes)";
            }
        } else {
            cs = 1;
            cf = a;
        }
    } else {
        if (pair.tame_i == 0) {
            cs = -a * a + 2 * a + (long long)p - 1;
            cf = -a * a * a + 2 * a * a + 2 * (long long)p * a - a - 2 * (long long)p;
            if (a == 1) {
                rep.degenerate_flag = true;
                rep.which_column = "sharp (a_2 = 1)";
            }
        } else {
            cs = 1;
            cf = a;
        }
    }
    Zp lhsv = Ls * Zp::from_int(p, cs, max_prec_for(p));
    Zp rhsv = Lf * Zp::from_int(p, cf, max_prec_for(p));
    Zp diff = lhsv - rhsv;
    // Undetermined when both sides vanish to precision
    if (lhsv.is_zero_res() && rhsv.is_zero_res()) {
        rep.determined = false;
        return rep;
    }
    rep.determined = true;
    rep.certified_digits = diff.abs_prec();
    rep.pass = diff.is_zero_res() || (diff.ord() && *diff.ord() >= digits);
    return rep;
}

FeReport functional_equation_check(const SharpFlatPair& pair, const StableSeries* stable) {
    FeReport rep;
    const HeckeData& h = pair.h;
    uint64_t p = h.p;
    int n = pair.sharp.n;
    if (h.level_Nf == 0) throw ParseError("functional equation needs the level N_f");
    long L = discrete_log_gamma(p, h.level_Nf, n);
    // c = -eps(-1) omega^i(-N_f): for tame i, omega^i(-N) = omega(-N)^i with
    // omega(-N) = -omega(N) * (omega(-1) = -1 for p odd; p=2 via a mod 4)
    // For the Z_p-coefficient scope the value is +-1 exactly.
    Zp wi = Zp::one(p);
    if (pair.tame_i != 0) {
        Zp w = teichmuller(p, -h.level_Nf, max_prec_for(p));
        for (int k = 0; k < pair.tame_i; ++k) wi = wi * w;
    }
    int csign = -h.eps_minus1;

    // (i) exact data-level FE
    {
        LambdaElement lt = pair.theta_n.sigma();
        LambdaElement rt = pair.theta_n.mul_group_like(L).scale(wi);
        if (csign < 0) rt = -rt;
        LambdaElement ln = pair.nu_theta_nm1.sigma();
        LambdaElement rn = pair.nu_theta_nm1.mul_group_like(L).scale(wi);
        if (csign < 0) rn = -rn;
        rep.data_fe_exact = (lt - rt).is_zero_res() && (ln - rn).is_zero_res();
    }

    // (ii) mod-kernel FE: candidate W := c X^{-L} sigma(pair) reconstructs the data
    auto reconstructs = [&](const LambdaElement& c1, const LambdaElement& c2, bool completed,
                            const LambdaElement& wfac_s, const LambdaElement& wfac_f,
                            bool use_w) -> bool {
        LambdaElement a1 = c1.sigma().mul_group_like(-L);
        LambdaElement a2 = c2.sigma().mul_group_like(-L);
        if (use_w) {
            a1 = a1 * wfac_s;
            a2 = a2 * wfac_f;
        }
        a1 = a1.scale(wi);
        a2 = a2.scale(wi);
        if (csign < 0) {
            a1 = -a1;
            a2 = -a2;
        }
        auto [t1, t2] = forward_compose(a1, a2, h, completed);
        return (t1 - pair.theta_n).is_zero_res() && (t2 - pair.nu_theta_nm1).is_zero_res();
    };
    LambdaElement one_l = group_like_power(p, n, 0, max_prec_for(p));
    if (pair.completed && !(p == 2)) {
        rep.mod_kernel_exact = reconstructs(pair.sharp, pair.flat, true, one_l, one_l, false);
    } else if (pair.completed && p == 2) {
        // diag(1, (1+T)^{-1}) correction enters through Chat_1; checked via the
        // W-style insertion on the flat component
        LambdaElement x_inv = group_like_power(p, n, -1, max_prec_for(p));
        rep.mod_kernel_exact = reconstructs(pair.sharp, pair.flat, true, one_l, x_inv, true);
    }
    // a_p = 0: the W-twisted uncompleted identity (and its negative control)
    if (h.ap == 0 && !pair.completed) {
        long long ws = w_plus_partial_exponent(p, n);
        long long wf = w_minus_partial_exponent(p, n);
        LambdaElement Wp = group_like_power(p, n, ws, max_prec_for(p));
        LambdaElement Wm = group_like_power(p, n, wf, max_prec_for(p));
        rep.wfe_mod_kernel = reconstructs(pair.sharp, pair.flat, false, Wp, Wm, true);
        rep.wfe_negative_control = !reconstructs(pair.sharp, pair.flat, false, one_l, one_l, false);
    }

    // (iii) direct comparison within the observed stabilization window
    if (stable) {
        int window = 1 << 20;
        auto direct = [&](const SeriesApprox& s, const LambdaElement& e) {
            LambdaElement rhs = e.sigma().mul_group_like(-L).scale(wi);
            if (csign < 0) rhs = -rhs;
            Zp model = Zp::zero(p);
            for (size_t k = 0; k < e.ring_size(); ++k) {
                int cert = (k < s.c.size()) ? s.c[k].abs_prec() : 0;
                if (cert <= 0) continue;
                Zp d = e.rep.coeff(k, model) - rhs.rep.coeff(k, model);
                auto o = d.ord();
                int agree = o ? (int)*o : d.abs_prec();
                window = std::min(window, std::min(cert, agree));
            }
        };
        direct(stable->sharp, pair.sharp);
        direct(stable->flat, pair.flat);
        rep.direct_window_digits = window == (1 << 20) ? 0 : std::max(0, window);
    }
    return rep;
}

namespace {

// the vector Upsilon C_1...C_n (uncompleted) as a Lambda_n pair
std::pair<LambdaElement, LambdaElement> times_ccc(const SharpFlatPair& pair, int upto) {
    const HeckeData& h = pair.h;
    Zp ap = Zp::from_int(h.p, h.ap, max_prec_for(h.p));
    Zp meps = Zp::from_int(h.p, -h.eps, max_prec_for(h.p));
    LambdaElement x = pair.sharp, y = pair.flat;
    for (int i = 1; i <= upto; ++i) {
        LambdaElement phi(cyclotomic_rep(h.p, i, max_prec_for(h.p)), h.p, x.n);
        LambdaElement nx = x.scale(ap) + (phi * y).scale(meps);
        y = x;
        x = nx;
    }
    return {x, y};
}

}  // namespace

std::vector<VanishingRow> vanishing_orders(const SharpFlatPair& pair, int m_max) {
    std::vector<VanishingRow> rows;
    int n = pair.sharp.n;
    auto [V1, V2] = times_ccc(pair, n);
    for (int m = 0; m <= std::min(m_max, n); ++m) {
        VanishingRow r;
        r.m = m;
        r.ord_sharp_component = ord_at_point(V1, m);
        r.ord_flat_component = ord_at_point(V2, m);
        if (r.ord_sharp_component && r.ord_flat_component)
            r.d_m = std::min(*r.ord_sharp_component, *r.ord_flat_component);
        else if (r.ord_sharp_component)
            r.d_m = r.ord_sharp_component;
        else if (r.ord_flat_component)
            r.d_m = r.ord_flat_component;
        // equiroots: certified by det Xi_n(zeta_{p^m}-1) != 0 (supersingular)
        if (pair.h.supersingular()) {
            try {
                XiResult xi = xi_remainder(pair.h, n, m, 8);
                r.equiroots_certified = xi.det_ord.is_finite();
            } catch (const std::exception&) {
                r.equiroots_certified = false;
            }
        }
        rows.push_back(r);
    }
    return rows;
}

GcdReport gcd_structure(const SharpFlatPair& pair, int m_max) {
    GcdReport rep;
    int n = pair.sharp.n;
    auto ts = ord_at_point(pair.sharp, 0);
    auto tf = ord_at_point(pair.flat, 0);
    if (ts && tf)
        rep.t_exponent = std::min(*ts, *tf);
    else if (ts)
        rep.t_exponent = ts;
    else if (tf)
        rep.t_exponent = tf;
    auto rows = vanishing_orders(pair, 0);
    if (!rows.empty()) rep.r0_an = rows[0].d_m;
    if (rep.t_exponent && rep.r0_an && *rep.t_exponent != *rep.r0_an) rep.pass = false;
    for (int m = 1; m <= std::min(m_max, n); ++m) {
        GcdReport::Cyclo c;
        c.m = m;
        auto os = ord_at_point(pair.sharp, m);
        auto of = ord_at_point(pair.flat, m);
        if (!os || !of) continue;
        c.gcd_exponent = std::min(*os, *of);
        auto [g1, g2] = times_ccc(pair, n);
        auto d1 = ord_at_point(g1, m);
        auto d2 = ord_at_point(g2, m);
        if (!d1 || !d2) continue;
        c.d_m = std::min(*d1, *d2);
        c.consistent = (c.gcd_exponent == c.d_m - 1) || (c.gcd_exponent == c.d_m);
        if (!c.consistent) rep.pass = false;
        // which case of the four-way order comparison fired (section-6.2 lemma):
        // compare the two components of f = g C_m at the point
        auto [f1v, f2v] = times_ccc(pair, m);
        auto [g1v, g2v] = times_ccc(pair, m - 1);
        (void)g1v;
        (void)g2v;
        auto o1 = ord_at_point(f1v, m);
        auto o2 = ord_at_point(f2v, m);
        if (o1 && o2) {
            if (*o1 < *o2)
                c.lemma_branch = 1;
            else if (*o1 == *o2)
                c.lemma_branch = pair.h.ap != 0 ? 2 : 4;
            else
                c.lemma_branch = pair.h.ap != 0 ? 3 : 4;
        } else {
            c.lemma_branch = 0;
        }
        rep.cyclotomic.push_back(c);
    }
    return rep;
}

PmInvariants queue_invariants_pm(const std::vector<LambdaElement>& thetas, const HeckeData& h) {
    if (h.p == 2) throw UnknownBranch("mu_pm/lambda_pm are defined for odd p");
    PmInvariants out;
    std::vector<std::pair<ValQ, long>> odd, even;
    for (size_t n = 1; n < thetas.size(); ++n) {
        auto inv = iwasawa_invariants(thetas[n]);
        if (!inv) continue;
        long q = kurihara_q(h.p, (int)n, n % 2 == 1);
        std::pair<ValQ, long> v{inv->mu, inv->lambda - q};
        if (n % 2 == 1)
            odd.push_back(v);
        else
            even.push_back(v);
    }
    if (odd.empty() || even.empty()) throw NotStabilized("not enough queue levels");
    // the matching corollary: + from odd levels (- q^sharp), - from even (- q^flat)
    out.mu_plus = odd.back().first;
    out.lambda_plus = odd.back().second;
    out.stabilized_plus = odd.size() >= 2 && odd[odd.size() - 2] == odd.back();
    out.mu_minus = even.back().first;
    out.lambda_minus = even.back().second;
    out.stabilized_minus = even.size() >= 2 && even[even.size() - 2] == even.back();
    return out;
}

GreenbergReport greenberg_report(const SharpFlatPair& pair, int m_max) {
    GreenbergReport rep;
    rep.at_roots = vanishing_orders(pair, m_max);
    // common zeros off roots of unity are bounded by lambda of the gcd: use the
    // smaller of the two lambda-invariants as the computable bound
    auto is = iwasawa_invariants(pair.sharp);
    auto iff = iwasawa_invariants(pair.flat);
    if (is && iff) rep.lambda_gcd_bound = std::min(is->lambda, iff->lambda);
    return rep;
}

}  // namespace sharpflat
