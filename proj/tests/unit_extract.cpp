#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sharpflat/extract.hpp"
#include "test_util.hpp"

using namespace sharpflat;
using namespace sharpflat::testutil;

static void roundtrip_once(std::mt19937_64& rng, uint64_t p, int n, long long ap, int eps,
                           bool completed, int prec) {
    HeckeData h;
    h.p = p;
    h.ap = ap;
    h.eps = eps;
    LambdaElement u1 = random_lambda(rng, p, n, prec);
    LambdaElement u2 = random_lambda(rng, p, n, prec);
    auto [x, y] = forward_compose_raw(u1.rep, u2.rep, h, n, completed);
    // extraction runs on the raw polynomial pair (the Tandem telescoping);
    // align the Laurent shifts by the common factor (1+T)^s first
    Zp one = Zp::one(p);
    long s = std::max(x.shift, y.shift);
    Poly<Zp> xr = x.num * one_plus_T_pow((size_t)(s - x.shift), one);
    Poly<Zp> yr = y.num * one_plus_T_pow((size_t)(s - y.shift), one);
    auto [v1, v2] = extract_raw(xr, yr, h, n, completed);
    // undo the common (1+T)^{-s} and reduce into Lambda_n
    auto reduce = [&](Laurent<Zp> f) {
        f.shift += s;
        size_t pn = u1.ring_size();
        long sh = f.shift % (long)pn;
        if (sh < 0) sh += (long)pn;
        Poly<Zp> g = f.num * one_plus_T_pow((size_t)(((long)pn - sh) % (long)pn), one);
        return LambdaElement(g, p, n);
    };
    CHECK((reduce(v1) - u1).is_zero_res());
    CHECK((reduce(v2) - u2).is_zero_res());
}

TEST_CASE("extract o forward_compose = identity (hand case)") {
    // p = 3, ap = 0, eps = 1, n = 1, Upsilon = (1, 0): forward gives (1, 0)
    HeckeData h{3, 0, 1, 0, 1};
    LambdaElement one(Poly<Zp>::constant(Zp::one(3).cap_abs_prec(20)), 3, 1);
    LambdaElement zero(Poly<Zp>(), 3, 1);
    auto [a, b] = forward_compose(one, zero, h, true);
    CHECK((a - one).is_zero_res());
    CHECK(b.is_zero_res());
    SharpFlatPair back = extract(a, b, h, true);
    CHECK((back.sharp - one).is_zero_res());
    CHECK(back.flat.is_zero_res());
}

TEST_CASE("roundtrip: exhaustive small grid") {
    std::mt19937_64 rng(1001);
    for (uint64_t p : {2ull, 3ull}) {
        for (int n = 1; n <= 2; ++n) {
            for (long long ap : {0ll, 1ll, -1ll, 2ll, -2ll, (long long)p, -(long long)p}) {
                for (int eps : {1, -1}) {
                    for (bool completed : {true, false}) {
                        roundtrip_once(rng, p, n, ap, eps, completed, 24);
                    }
                }
            }
        }
    }
}

TEST_CASE("roundtrip: randomized p = 5, n = 3") {
    std::mt19937_64 rng(2002);
    for (int t = 0; t < 40; ++t) {
        long long ap = (long long)(rng() % 11) - 5;
        roundtrip_once(rng, 5, 3, ap, (t % 2) ? 1 : -1, t % 3 != 0, 20);
    }
}

TEST_CASE("DivisionRemainder on corrupted data") {
    HeckeData h{3, -3, 1, 37, 1};
    std::mt19937_64 rng(33);
    LambdaElement u1 = random_lambda(rng, 3, 2, 20);
    LambdaElement u2 = random_lambda(rng, 3, 2, 20);
    auto [a, b] = forward_compose(u1, u2, h, true);
    // perturb one coefficient: the eigenform hypothesis is falsified
    Poly<Zp> bad = b.rep;
    bad.c.resize(std::max<size_t>(bad.c.size(), 3), Zp::zero(3));
    bad.c[2] = bad.c[2] + Zp::one(3).cap_abs_prec(20);
    LambdaElement b2(bad, 3, 2);
    CHECK_THROWS_AS(extract(a, b2, h, true), DivisionRemainder);
}

TEST_CASE("E37A@p=3: invariants, reconstruction, stability") {
    ModularSymbolTable t = load_table(fixture_path("e37a_p3_plus.mst"));
    CHECK(t.h.ap == -3);
    auto thetas = build_theta_tower(t, 0, 30);
    QueueReport q = validate_queue(thetas, t.h);
    CHECK(q.valid);
    CHECK(q.matrix_form_ok);
    for (int n : {2, 3, 4}) {
        for (bool completed : {true, false}) {
            SharpFlatPair pair = extract_from_table(t, 0, n, 30, completed);
            auto is = iwasawa_invariants(pair.sharp);
            auto iff = iwasawa_invariants(pair.flat);
            REQUIRE(is);
            REQUIRE(iff);
            CHECK(is->mu == ValQ(0));
            CHECK(is->lambda == 1);
            CHECK(iff->mu == ValQ(0));
            CHECK(iff->lambda == 5);
            // reconstruction identity holds exactly in Lambda_n
            auto [rt, rn] = forward_compose(pair.sharp, pair.flat, t.h, completed);
            CHECK((rt - pair.theta_n).is_zero_res());
            CHECK((rn - pair.nu_theta_nm1).is_zero_res());
        }
    }
}

TEST_CASE("E37A@p=3: functional equation (exact data + mod-kernel forms)") {
    ModularSymbolTable t = load_table(fixture_path("e37a_p3_plus.mst"));
    for (int n : {2, 3}) {
        SharpFlatPair pair = extract_from_table(t, 0, n, 30, true);
        StableSeries st = extract_stable(t, 0, 30, true);
        FeReport fe = functional_equation_check(pair, &st);
        CHECK(fe.data_fe_exact);
        CHECK(fe.mod_kernel_exact);
    }
}

TEST_CASE("E37A@p=3: vanishing orders and gcd structure") {
    ModularSymbolTable t = load_table(fixture_path("e37a_p3_plus.mst"));
    SharpFlatPair pair = extract_from_table(t, 0, 3, 30, false);
    auto rows = vanishing_orders(pair, 3);
    REQUIRE(rows.size() == 4);
    CHECK(*rows[0].d_m == 1);
    CHECK(*rows[1].d_m == 0);
    CHECK(*rows[2].d_m == 1);
    CHECK(*rows[3].d_m == 0);
    for (auto& r : rows) CHECK(r.equiroots_certified);
    GcdReport g = gcd_structure(pair, 3);
    CHECK(g.pass);
    REQUIRE(g.t_exponent);
    CHECK(*g.t_exponent == 1);  // rank-one curve: exact T-power is T^{r_0}
}

TEST_CASE("E37A@p=3: Perrin-Riou invariants match the sharp/flat pair") {
    ModularSymbolTable t = load_table(fixture_path("e37a_p3_plus.mst"));
    auto thetas = build_theta_tower(t, 0, 30);
    PmInvariants pm = queue_invariants_pm(thetas, t.h);
    CHECK(pm.mu_plus == ValQ(0));
    CHECK(pm.mu_minus == ValQ(0));
    CHECK(pm.lambda_plus == 1);   // = lambda_sharp
    CHECK(pm.lambda_minus == 5);  // = lambda_flat
    CHECK(pm.stabilized_plus);
    CHECK(pm.stabilized_minus);
}

TEST_CASE("E37A@p=2: queue + roundtrip of genuine 2-adic data") {
    ModularSymbolTable t = load_table(fixture_path("e37a_p2_plus.mst"));
    CHECK(t.h.ap == -2);
    auto thetas = build_theta_tower(t, 0, 30);
    QueueReport q = validate_queue(thetas, t.h);
    CHECK(q.valid);
    for (int n : {2, 3, 4}) {
        // uncompleted extraction is exact at p = 2
        SharpFlatPair pair = extract_from_table(t, 0, n, 30, false);
        auto [rt, rn] = forward_compose(pair.sharp, pair.flat, t.h, false);
        CHECK((rt - pair.theta_n).is_zero_res());
        CHECK((rn - pair.nu_theta_nm1).is_zero_res());
    }
    // the hat-completion at p = 2 breaks the collapse Chat_i(zeta_{2^n}) = C
    // at i = n+1 (the completion exponent is odd times 2^{n-1}), so the
    // completed loop cannot divide genuine queue data
    CHECK_THROWS_AS(extract_from_table(t, 0, 2, 30, true), DivisionRemainder);
}

TEST_CASE("main theorem identity on the fixture") {
    ModularSymbolTable t = load_table(fixture_path("e37a_p3_plus.mst"));
    for (int n : {1, 2, 3}) {
        CheckReport rep = main_theorem_check(t, 0, n, 28, 20);
        CHECK(rep.pass);
        CHECK(rep.certified_digits >= 20);
    }
}

TEST_CASE("main theorem identity on synthetic tables (incl. ordinary)") {
    std::mt19937_64 rng(404);
    // supersingular synthetic
    for (int trial = 0; trial < 3; ++trial) {
        ModularSymbolTable t = random_table(rng, 3, 3, 1, 4);
        CHECK(validate_queue(build_theta_tower(t, 0, 28), t.h).valid);
        CheckReport rep = main_theorem_check(t, 0, 2, 28, 20);
        CHECK(rep.pass);
    }
    // ordinary synthetic: alpha-column only
    for (int trial = 0; trial < 3; ++trial) {
        ModularSymbolTable t = random_table(rng, 3, 1, 1, 4);
        CheckReport rep = main_theorem_check(t, 0, 2, 28, 20);
        CHECK(rep.pass);
    }
}

TEST_CASE("special value table check on synthetic ordinary data") {
    std::mt19937_64 rng(505);
    // For the ratio to be testable the pair values at 0 must not both vanish.
    ModularSymbolTable t = random_table(rng, 5, 2, 1, 3);
    SharpFlatPair pair = extract_from_table(t, 0, 2, 25, true);
    SpecialValueReport rep = special_value_table_check(pair, 10);
    // synthetic data need not satisfy the interpolation identity; the call
    // must be deterministic and report a verdict or Undetermined
    CHECK((rep.determined || !rep.determined));
    // degenerate-flag surface: ap = 2 at odd p flags the flat column
    ModularSymbolTable t2 = random_table(rng, 3, 2, 1, 3);
    SharpFlatPair pair2 = extract_from_table(t2, 0, 2, 25, true);
    SpecialValueReport rep2 = special_value_table_check(pair2, 10);
    CHECK(rep2.degenerate_flag);
}
