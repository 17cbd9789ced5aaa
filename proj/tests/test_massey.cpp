#include "filiform/error.hpp"
#include "filiform/families.hpp"
#include "filiform/massey.hpp"

#include <doctest.h>

#include <random>

using namespace filiform;

namespace {

DiagonalParams random_params(std::mt19937_64& rng, int n) {
    DiagonalParams p;
    for (int i = 0; i < n; ++i) {
        p.u.emplace_back(static_cast<long>(rng() % 13) - 6, static_cast<long>(rng() % 4) + 1);
        p.u.back().canonicalize();
    }
    return p;
}

}  // namespace

TEST_CASE("squares of the 3-family") {
    HomCochain f = k_family({3, -2, 40});
    for (int j = 4; j <= 20; ++j) CHECK(massey_square(f, 2, 3, j) == 1);
    TripleCheck c = all_squares_zero(f, 15);
    CHECK_FALSE(c.ok);
    REQUIRE(c.witness);
    CHECK(*c.witness == Triple{2, 3, 4});
}

TEST_CASE("squares of the m-family vanish") {
    for (int m = 2; m <= 8; ++m) {
        HomCochain f = k_family({m, -m, 40});
        INFO("m=" << m);
        CHECK(all_squares_zero(f, 16).ok);
    }
}

TEST_CASE("squares are alternating") {
    std::mt19937_64 rng(3);
    HomCochain w = from_diagonal(random_params(rng, 6), 0, 30);
    for (int i = 1; i <= 8; ++i)
        for (int k = 1; k <= 8; ++k) CHECK(massey_square(w, i, i, k) == 0);
    Rational v = massey_square(w, 2, 4, 7);
    CHECK(massey_square(w, 4, 2, 7) == -v);
    CHECK(massey_square(w, 7, 2, 4) == v);
    CHECK(massey_square(w, 2, 7, 4) == -v);
}

TEST_CASE("squares outside the window throw") {
    HomCochain f = k_family({2, 0, 10});
    CHECK_THROWS_AS(massey_square(f, 2, 3, 9), Error);
    CHECK_FALSE(square_in_window(f, 2, 3, 9));
    CHECK(square_in_window(f, 2, 3, 4));
}

TEST_CASE("square-zero examples") {
    CHECK(all_squares_zero(k_family({2, 0, 40}), 18).ok);
    CHECK(all_squares_zero(HomCochain(2, 0, 30), 14).ok);
}

TEST_CASE("compensable triples") {
    for (int k = 4; k <= 30; ++k) CHECK(compensable(2, 3, k, -2));
    CHECK(compensable(3, 4, 9, -3));
    CHECK(compensable(2, 5, 9, -3));
    CHECK_FALSE(compensable(2, 4, 9, -3));
    for (int l = -1; l <= 3; ++l) CHECK_FALSE(compensable(2, 3 - 2 * l - 2, 10, l));
    CHECK_FALSE(compensable(2, 3, 4, 0));
}

TEST_CASE("compensating the 3-family") {
    HomCochain f = k_family({3, -2, 40});
    auto a = try_compensate(f, 12);
    REQUIRE(a);
    CHECK(a->weight() == -4);
    REQUIRE(a->coeffs().size() == 1);
    CHECK(a->at({2, 3}) == 1);

    auto z = try_compensate(k_family({2, 0, 40}), 12);
    REQUIRE(z);
    CHECK(z->is_zero());

    // the squares are quadratic in omega, so 2*omega has squares 4*M
    HomCochain f2 = Rational(2) * f;
    auto a4 = try_compensate(f2, 12);
    REQUIRE(a4);
    CHECK(*a4 == Rational(4) * *a);
    CHECK_THROWS_AS(make_cube_input(f, Rational(2) * *a, 12), Error);
    CHECK_NOTHROW(make_cube_input(f2, *a4, 12));
}

TEST_CASE("cubes of the compensated 3-family") {
    HomCochain f = k_family({3, -2, 40});
    CubeInput in = make_cube_input(f, *try_compensate(f, 12), 12);
    for (int k = 4; k <= 12; ++k) CHECK(massey_cube(in, 2, 3, k) == 0);
    CHECK(massey_cube(in, 2, 4, 5) == 0);
    CHECK(all_cubes_zero(in, 12).ok);

    HomCochain g = k_family({2, 0, 40});
    CubeInput zero = make_cube_input(g, HomCochain(2, 0, 13), 12);
    CHECK(all_cubes_zero(zero, 12).ok);
    CHECK(massey_cube(zero, 2, 3, 7) == 0);

    CHECK_THROWS_AS(make_cube_input(f, HomCochain(2, -2, 13), 12), Error);
}

TEST_CASE("four-term relation") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        HomCochain w = from_diagonal(random_params(rng, 8), 0, 40);
        CHECK(relation_defect(w, 2, 4, 7) == 0);
        CHECK(relation_defect(w, 2, 4, 4) == 0);
        CHECK(massey_square(w, 2, 3, 4) == massey_square(w, 2, 3, 5));
    }
    CHECK(relation_defect(HomCochain(2, 0, 20), 2, 4, 7) == 0);
}

TEST_CASE("four-term relation across weights") {
    std::mt19937_64 rng(9);
    for (int l = -3; l <= 3; ++l)
        for (int trial = 0; trial < 4; ++trial) {
            HomCochain w = from_diagonal(random_params(rng, 7), l, 30);
            REQUIRE(is_cocycle(w).ok);
            for (int i = 2; i <= 8; ++i)
                for (int j = 3; j <= 8; ++j)
                    for (int k = 2; k <= 8; ++k) {
                        if (!square_in_window(w, i, j, k) || !square_in_window(w, i, j - 1, k + 1) ||
                            !square_in_window(w, i + 1, j - 1, k) || !square_in_window(w, i, j - 1, k))
                            continue;
                        if (i + j + k + 2 * l < 2) continue;
                        INFO("l=" << l << " (" << i << "," << j << "," << k << ")");
                        CHECK(relation_defect(w, i, j, k) == 0);
                    }
        }
}

TEST_CASE("the square of a cocycle is a 3-cocycle") {
    std::mt19937_64 rng(13);
    for (int l : {-2, 0, 1}) {
        HomCochain w = from_diagonal(random_params(rng, 6), l, 30);
        HomCochain M = massey_square_cochain(w, 9);
        INFO("l=" << l);
        CHECK(is_cocycle(M).ok);
    }
    HomCochain f = k_family({3, -2, 40});
    CHECK(is_cocycle(massey_square_cochain(f, 10)).ok);
}

TEST_CASE("M_2rs decide all squares at weight zero") {
    // solver branches through level 14 plus random seeds
    std::vector<DiagonalParams> seeds;
    seeds.push_back({{1, 0, 0, 0, 0}});
    seeds.push_back({{1, Rational(1, 10), Rational(1, 70), Rational(1, 420), Rational(1, 2310)}});
    std::mt19937_64 rng(17);
    for (int i = 0; i < 8; ++i) seeds.push_back(random_params(rng, 5));
    for (const auto& p : seeds) {
        HomCochain w = from_diagonal(p, 0, 30);
        bool m2_zero = true, all_zero = true;
        for (const auto& T : increasing_tuples(3, 2, 12)) {
            if (T[0] + T[1] + T[2] > 14) continue;
            Rational v = massey_square(w, T[0], T[1], T[2]);
            if (v == 0) continue;
            all_zero = false;
            if (T[0] == 2) m2_zero = false;
        }
        CHECK((!m2_zero || all_zero));
    }
}

TEST_CASE("squares change by a coboundary along a cohomology class") {
    std::mt19937_64 rng(19);
    for (int l : {0, 1}) {
        HomCochain w = from_diagonal(random_params(rng, 5), l, 20);
        HomCochain beta(1, l, 20);
        for (int i = 1; i <= 20; ++i)
            if (!beta.forbidden({i})) beta.set({i}, static_cast<long>(rng() % 7) - 3);
        HomCochain w2 = w + differential(beta).restricted(20);
        REQUIRE(is_cocycle(w2).ok);
        HomCochain diff = massey_square_cochain(w2, 7) - massey_square_cochain(w, 7);
        INFO("l=" << l);
        CHECK(find_primitive(diff).has_value());
    }
}
