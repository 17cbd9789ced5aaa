#include "filiform/cochain.hpp"
#include "filiform/error.hpp"
#include "filiform/families.hpp"

#include <doctest.h>

#include <random>

using namespace filiform;

namespace {

Rational small(std::mt19937_64& rng) {
    Rational v(static_cast<long>(rng() % 13) - 6, static_cast<long>(rng() % 5) + 1);
    v.canonicalize();
    return v;
}

HomCochain random_cochain(int q, int l, int M, std::mt19937_64& rng) {
    HomCochain c(q, l, M);
    if (q == 0) {
        if (l >= 1) c.set({}, small(rng));
        return c;
    }
    for (const auto& T : increasing_tuples(q, 1, M))
        if (!c.forbidden(T)) c.set(T, small(rng));
    return c;
}

bool same_on_common(const HomCochain& a, const HomCochain& b) {
    const int m = std::min(a.max_index(), b.max_index());
    return a.restricted(m).coeffs() == b.restricted(m).coeffs();
}

}  // namespace

TEST_CASE("cochain storage is antisymmetric") {
    HomCochain c(2, 0, 10);
    c.set({5, 3}, 2);
    CHECK(c.at({3, 5}) == -2);
    CHECK(c.at({5, 3}) == 2);
    CHECK(c.at({4, 4}) == 0);
    HomCochain b(3, 0, 10);
    b.set({2, 3, 4}, 1);
    CHECK(b.at({3, 2, 4}) == -1);
    CHECK(b.at({3, 4, 2}) == 1);
    CHECK_THROWS_AS(c.set({3, 11}, 1), Error);
}

TEST_CASE("forbidden coordinates stay empty") {
    HomCochain c(2, -4, 10);
    CHECK(c.forbidden({1, 2}));
    CHECK(c.forbidden({1, 3}));
    CHECK_FALSE(c.forbidden({1, 4}));
    CHECK_FALSE(c.forbidden({2, 3}));
    CHECK_THROWS_AS(c.set({1, 3}, 1), Error);
}

TEST_CASE("differential of e_1 is ad e_1") {
    HomCochain e1(0, 1, 20);
    e1.set({}, 1);
    HomCochain d = differential(e1);
    for (int i = 2; i < d.max_index(); ++i) CHECK(d.at({i}) == 1);
    CHECK(d.at({1}) == 0);
}

TEST_CASE("omega2 is closed") {
    HomCochain w2 = h1_generators(0, 30)[1].cochain;
    CHECK(differential(w2).is_zero());
    CHECK(is_cocycle(w2).ok);
}

TEST_CASE("differential of a generic weight-zero 1-cochain") {
    std::mt19937_64 rng(11);
    HomCochain alpha = random_cochain(1, 0, 20, rng);
    HomCochain d = differential(alpha);
    for (int i = 2; i + 1 < d.max_index(); ++i)
        CHECK(d.at({1, i}) == alpha.at({i + 1}) - alpha.at({i}) - alpha.at({1}));
}

TEST_CASE("cocycle checks with witnesses") {
    CHECK(is_cocycle(k_family({2, 0, 30})).ok);
    HomCochain lone(2, 0, 20);
    lone.set({2, 3}, 1);
    auto r = is_cocycle(lone);
    CHECK_FALSE(r.ok);
    REQUIRE(r.witness);
    CHECK(*r.witness == Index{1, 2, 3});
    CHECK(is_cocycle(HomCochain(2, 3, 20)).ok);
}

TEST_CASE("d squares to zero") {
    std::mt19937_64 rng(5);
    for (int l = -6; l <= 6; ++l)
        for (int q : {0, 1}) {
            HomCochain c = random_cochain(q, l, 40, rng);
            HomCochain dd = differential(differential(c));
            CHECK_MESSAGE(dd.is_zero(), "q=" << q << " l=" << l);
        }
}

TEST_CASE("first cohomology") {
    auto r0 = cohomology_dim(1, 0, 40);
    CHECK(r0.dim_window == 2);
    CHECK(r0.stable);
    auto r3 = cohomology_dim(1, -3, 40);
    CHECK(r3.dim_window == 0);
    CHECK(r3.stable);
    for (int l = 1; l <= 8; ++l) CHECK(cohomology_dim(1, l, 40).dim_window == 1);
    for (int l = -8; l <= -1; ++l) CHECK(cohomology_dim(1, l, 40).dim_window == 0);
}

TEST_CASE("second cohomology grows with N") {
    int a = cohomology_dim_window(2, 0, 20);
    int b = cohomology_dim_window(2, 0, 30);
    int c = cohomology_dim_window(2, 0, 40);
    CHECK(a < b);
    CHECK(b < c);
    CHECK_FALSE(cohomology_dim(2, 0, 20).stable);
}

TEST_CASE("cohomology needs a wide enough truncation") {
    CHECK_THROWS_AS(cohomology_dim(1, 0, 9), Error);
    CHECK_THROWS_AS(cohomology_dim(1, -5, 24), Error);
    CHECK_THROWS_AS(cohomology_dim(3, 0, 20), Error);
}

TEST_CASE("named first-degree generators") {
    auto g0 = h1_generators(0, 20);
    REQUIRE(g0.size() == 2);
    CHECK(g0[0].cochain.at({5}) == 3);
    CHECK(g0[0].cochain.at({1}) == 1);
    CHECK(g0[0].cochain.at({2}) == 0);
    CHECK(h1_generators(-2, 20).empty());
    auto g3 = h1_generators(3, 20);
    REQUIRE(g3.size() == 1);
    CHECK(g3[0].cochain.at({1}) == 0);
    for (int k = 2; k <= 20; ++k) CHECK(g3[0].cochain.at({k}) == 1);
    for (int l : {0, 1, 2, 5})
        for (const auto& g : h1_generators(l, 30)) CHECK(is_cocycle(g.cochain).ok);
}

TEST_CASE("degree-one bracket table") {
    auto w = h1_generators(0, 30);
    HomCochain a3 = h1_generators(3, 30)[0].cochain;
    HomCochain gamma = h1_generators(1, 30)[0].cochain;
    CHECK(same_on_common(nr_bracket_deg1(w[0].cochain, a3), Rational(3) * a3));
    CHECK(same_on_common(nr_bracket_deg1(w[1].cochain, gamma), gamma));
    CHECK(nr_bracket_deg1(w[0].cochain, w[1].cochain).is_zero());
    CHECK(find_primitive(nr_bracket_deg1(a3, gamma)));
    CHECK_THROWS_AS(nr_bracket_deg1(w[0].cochain, k_family({2, 0, 10})), Error);
}

TEST_CASE("degree-one bracket is antisymmetric and satisfies Jacobi") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        int la = static_cast<int>(rng() % 5) - 1, lb = static_cast<int>(rng() % 5) - 1,
            lc = static_cast<int>(rng() % 5) - 1;
        HomCochain a = random_cochain(1, la, 24, rng), b = random_cochain(1, lb, 24, rng),
                   c = random_cochain(1, lc, 24, rng);
        HomCochain ab = nr_bracket_deg1(a, b), ba = nr_bracket_deg1(b, a);
        CHECK(same_on_common(ab, Rational(-1) * ba));
        HomCochain j = nr_bracket_deg1(a, nr_bracket_deg1(b, c)) + nr_bracket_deg1(b, nr_bracket_deg1(c, a)) +
                       nr_bracket_deg1(c, nr_bracket_deg1(a, b));
        CHECK(j.is_zero());
    }
}

TEST_CASE("reduction modulo coboundaries") {
    CHECK(reduce_mod_coboundary(k_family({2, -1, 24})).is_zero());
    HomCochain f3 = k_family({3, -2, 24});
    CHECK(reduce_mod_coboundary(f3) == f3);
    HomCochain lone(2, 0, 10);
    lone.set({2, 3}, 1);
    CHECK_THROWS_AS(reduce_mod_coboundary(lone), Error);
}

TEST_CASE("the a_{3,j} pattern is cohomologous to a_{1,2}") {
    const int M = 24;
    HomCochain pattern(2, -2, M), single(2, -2, M);
    for (int j = 2; j <= M; ++j)
        if (j != 3) pattern.set({3, j}, 1);
    single.set({1, 2}, 1);
    auto beta = find_primitive(single - pattern);
    REQUIRE(beta);
    CHECK(beta->coeffs().size() == 1);
    CHECK(beta->at({3}) != 0);
}

TEST_CASE("reduction changes a cocycle by a coboundary") {
    std::mt19937_64 rng(17);
    for (int l : {-3, -2, -1, 0, 1, 2}) {
        DiagonalParams p;
        for (int m = 2; m < 12; ++m) p.u.push_back(small(rng));
        HomCochain c = from_diagonal(p, l, 20) + differential(random_cochain(1, l, 22, rng)).restricted(20);
        REQUIRE(is_cocycle(c).ok);
        HomCochain r = reduce_mod_coboundary(c);
        CHECK(find_primitive(c - r));
        for (const auto& [idx, v] : r.coeffs())
            if (idx[0] == 1) CHECK(idx[1] < std::max(2, -l + 2));
    }
}
