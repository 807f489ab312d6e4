#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "sharpflat/mazurtate.hpp"
#include "test_util.hpp"

using namespace sharpflat;
using namespace sharpflat::testutil;

TEST_CASE("table parsing and validation") {
    // minimal synthetic file, p = 3, nmax = 1: entries a in {1, 2}
    {
        std::istringstream in("p=3\nnmax=1\nsign=+\nap=1\neps=1\n1 1 4\n1 2 -7\n");
        ModularSymbolTable t = parse_table(in);
        CHECK(t.entries.size() == 2);
        CHECK(t.at(1, 2).first == -7);
    }
    // missing residue class -> IncompleteLevel
    {
        std::istringstream in("p=3\nnmax=1\nsign=+\nap=1\neps=1\n1 1 4\n");
        CHECK_THROWS_AS(parse_table(in), IncompleteLevel);
    }
    // garbage -> ParseError
    {
        std::istringstream in("p=3\nnmax=1\nsign=+\nap=x\n");
        CHECK_THROWS_AS(parse_table(in), ParseError);
    }
    // denominator beyond declared bound -> DenominatorViolation
    {
        std::istringstream in("p=3\nnmax=1\nsign=+\nap=1\neps=1\ndenbound=2\n1 1 1/2\n1 2 1/5\n");
        CHECK_THROWS_AS(parse_table(in), DenominatorViolation);
    }
    // E37A fixture loads, ap recorded
    {
        ModularSymbolTable t = load_table(fixture_path("e37a_p3_plus.mst"));
        CHECK(t.h.ap == -3);
        CHECK(t.h.level_Nf == 37);
        CHECK(t.nmax == 5);
    }
}

TEST_CASE("theta_0 lives in Lambda_0") {
    std::mt19937_64 rng(71);
    ModularSymbolTable t = random_table(rng, 3, 1, 1, 3);
    LambdaElement th0 = build_theta(t, 0, 2, 20);
    CHECK(th0.n == 2);
    LambdaElement t0 = build_theta(t, 0, 0, 20);
    CHECK(t0.n == 0);
    CHECK(t0.rep.deg() <= 0);
}

TEST_CASE("queue relation holds for Hecke-compatible synthetic tables") {
    std::mt19937_64 rng(72);
    for (uint64_t p : {3ull, 5ull}) {
        for (long long ap : {0ll, 1ll, (long long)p}) {
            ModularSymbolTable t = random_table(rng, p, ap, 1, 4);
            auto thetas = build_theta_tower(t, 0, 24);
            QueueReport q = validate_queue(thetas, t.h);
            CHECK(q.valid);
            CHECK(q.matrix_form_ok);
        }
    }
    // nontrivial tame character: the isotypical components also form a queue
    {
        ModularSymbolTable t = random_table(rng, 5, 2, 1, 4);
        auto thetas = build_theta_tower(t, 2, 24);
        CHECK(validate_queue(thetas, t.h).valid);
    }
    // a perturbed table violates the relation at the right level
    {
        ModularSymbolTable t = random_table(rng, 3, 1, 1, 4);
        t.entries[{4, 1}].first += 1;
        auto thetas = build_theta_tower(t, 0, 24);
        QueueReport q = validate_queue(thetas, t.h);
        CHECK(!q.valid);
        CHECK(q.first_failure == 3);
    }
}

TEST_CASE("riemann sums: matrix route equals direct route exactly") {
    std::mt19937_64 rng(73);
    for (long long ap : {1ll, 3ll}) {
        ModularSymbolTable t = random_table(rng, 3, ap, 1, 4);
        for (int N = 2; N <= 3; ++N) {
            RiemannSums a = riemann_sum_L(t, 0, N, 20, false);
            RiemannSums b = riemann_sum_L(t, 0, N, 20, true);
            QuadExt model = QuadExt::alpha(t.h, 20).zero_like();
            size_t pn = 1;
            for (int i = 0; i < a.n; ++i) pn *= 3;
            for (size_t k = 0; k < pn + 2; ++k) {
                CHECK((a.Lalpha.coeff(k, model) - b.Lalpha.coeff(k, model)).is_zero_res());
                CHECK((a.Lbeta.coeff(k, model) - b.Lbeta.coeff(k, model)).is_zero_res());
            }
        }
    }
}

TEST_CASE("p = 2 sign symmetry of genuine tables") {
    ModularSymbolTable t = load_table(fixture_path("e37a_p2_plus.mst"));
    CHECK(check_sign_symmetry(t));
    ModularSymbolTable tm = load_table(fixture_path("e37a_p2_minus.mst"));
    CHECK(check_sign_symmetry(tm));
}
