#include "filiform/error.hpp"
#include "filiform/families.hpp"

#include <doctest.h>

#include <array>
#include <random>

using namespace filiform;

namespace {

Rational binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    Rational r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Rational frac(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

DiagonalParams unit(int m) {
    DiagonalParams p;
    p.u.assign(m - 1, Rational(0));
    p.u[m - 2] = 1;
    return p;
}

}  // namespace

TEST_CASE("2-family") {
    HomCochain f = k_family({2, 0, 30});
    for (int k = 3; k <= 30; ++k) CHECK(f.at({2, k}) == 1);
    for (const auto& [idx, v] : f.coeffs()) CHECK(idx[0] == 2);
}

TEST_CASE("3-family") {
    HomCochain f = k_family({3, -2, 40});
    for (int k = 5; k <= 40; ++k) {
        CHECK(f.at({2, k}) == -(k - 4));
        CHECK(f.at({3, k}) == 1);
    }
    CHECK(f.at({2, 4}) == 0);
    CHECK(f.at({4, 7}) == 0);
}

TEST_CASE("4-family") {
    HomCochain f = k_family({4, -4, 40});
    for (int k = 7; k <= 40; ++k) {
        CHECK(f.at({2, k}) == frac((k - 5) * (k - 6), 2));
        CHECK(f.at({3, k}) == -(k - 5));
        CHECK(f.at({4, k}) == 1);
    }
}

TEST_CASE("5-family") {
    HomCochain f = k_family({5, -5, 40});
    for (int k = 8; k <= 40; ++k) {
        CHECK(f.at({3, k}) == frac((k - 6) * (k - 7), 2));
        CHECK(f.at({4, k}) == -(k - 6));
        CHECK(f.at({5, k}) == 1);
    }
}

TEST_CASE("closed form examples") {
    CHECK(closed_form_coeff(5, 2, 8) == 1);
    CHECK(closed_form_coeff(4, 1, 7) == -2);
    for (int m = 2; m <= 12; ++m) CHECK(closed_form_coeff(m, 0, m + 1) == 1);
    CHECK(closed_form_coeff(6, 3, 9) == 0);
    CHECK_THROWS_AS(closed_form_coeff(5, 4, 20), Error);
}

TEST_CASE("closed form agrees with the recurrence") {
    for (int m = 2; m <= 10; ++m) {
        HomCochain f = k_family({m, -m, 60}, true);
        for (int r = 0; r <= m - 2; ++r)
            for (int k = m - r + 1; k <= 60; ++k) {
                INFO("m=" << m << " r=" << r << " k=" << k);
                CHECK(closed_form_coeff(m, r, k) == f.at({m - r, k}));
            }
    }
}

TEST_CASE("families are cocycles") {
    for (int k = 2; k <= 10; ++k)
        for (int l : {-k, -1, 0, 1, 2}) {
            FamilySpec s{k, l, 60};
            if (!validity_check(s).valid) continue;
            INFO("k=" << k << " l=" << l);
            CHECK(is_cocycle(k_family(s)).ok);
        }
}

TEST_CASE("validity") {
    Validity v = validity_check({2, -4, 20});
    CHECK_FALSE(v.valid);
    CHECK(v.reason.rfind("antidiagonal-contradiction", 0) == 0);
    CHECK(validity_check({3, -5, 20}).valid);
    CHECK(validity_check({2, 0, 20}).valid);
    CHECK_FALSE(validity_check({3, -7, 20}).valid);
    for (int k = 2; k <= 10; ++k) CHECK(validity_check({k, -k, 30}).valid);
    CHECK_THROWS_AS(k_family({2, -6, 20}), Error);
    CHECK_NOTHROW(k_family({2, -6, 20}, true));
}

TEST_CASE("diagonal parametrization examples") {
    // a..f = u_2..u_7, evaluated one seed at a time
    const std::array<std::array<int, 6>, 5> rows{{
        {1, -3, 1, 0, 0, 0},      // a_{2,7}
        {0, 1, -5, 6, -1, 0},     // a_{3,10}
        {1, -8, 21, -20, 5, 0},   // a_{2,12}
        {0, 0, 1, -6, 10, -4},    // a_{4,12}
        {1, -10, 36, -56, 35, -6} // a_{2,14}
    }};
    const std::array<std::array<int, 2>, 5> at{{{2, 7}, {3, 10}, {2, 12}, {4, 12}, {2, 14}}};
    for (int m = 2; m <= 7; ++m) {
        HomCochain c = from_diagonal(unit(m), 0, 20);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            CHECK(c.at({at[r][0], at[r][1]}) == rows[r][m - 2]);
            CHECK(diagonal_coefficient(at[r][0], at[r][1], m) == rows[r][m - 2]);
        }
    }
    CHECK(from_diagonal(unit(2), 0, 30) == k_family({2, 0, 30}));
}

TEST_CASE("diagonal parametrization agrees with the recurrence") {
    std::mt19937_64 rng(7);
    for (int l : {-3, 0, 2}) {
        DiagonalParams p;
        for (int i = 0; i < 8; ++i) p.u.emplace_back(static_cast<long>(rng() % 11) - 5);
        CHECK(from_diagonal(p, l, 30) == recurrence_cochain(p, l, 30));
    }
    // sum formula as binomials
    for (int i = 2; i <= 6; ++i)
        for (int j = i + 1; j <= 20; ++j)
            for (int m = i; m < j; ++m) {
                Rational want = 2 * m - i + 1 > j ? Rational(0) : binom(j - m - 1, m - i);
                if ((m - i) % 2) want = -want;
                CHECK(diagonal_coefficient(i, j, m) == want);
            }
}

TEST_CASE("families from their diagonal") {
    for (int k = 2; k <= 8; ++k) {
        HomCochain f = k_family({k, 0, 40});
        DiagonalParams p;
        for (int m = 2; m <= 39; ++m) p.u.push_back(f.at({m, m + 1}));
        INFO("k=" << k);
        CHECK(from_diagonal(p, 0, 40) == f);
    }
}

TEST_CASE("diagonal parametrization is linear") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        DiagonalParams p, q, s;
        for (int i = 0; i < 7; ++i) {
            p.u.emplace_back(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 4) + 1);
            q.u.emplace_back(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 4) + 1);
            p.u.back().canonicalize();
            q.u.back().canonicalize();
            s.u.push_back(p.u.back() + q.u.back());
        }
        CHECK(from_diagonal(s, 0, 25) == from_diagonal(p, 0, 25) + from_diagonal(q, 0, 25));
    }
}

TEST_CASE("general coefficient table of the m-family argument") {
    // columns m-2..m+2 seeded with a, b, c, 0, e; entries as [a, b, c, e]
    struct Entry {
        int di, dj;
        std::array<int, 4> coef;
    };
    const Entry table[] = {
        {-2, -1, {1, 0, 0, 0}},  {-2, 0, {1, 0, 0, 0}},   {-2, 1, {1, -1, 0, 0}},
        {-2, 2, {1, -2, 0, 0}},  {-2, 3, {1, -3, 1, 0}},  {-2, 4, {1, -4, 3, 0}},
        {-2, 5, {1, -5, 6, 0}},  {-2, 6, {1, -6, 10, 0}}, {-2, 7, {1, -7, 15, 1}},
        {-2, 8, {1, -8, 21, 5}}, {-1, 0, {0, 1, 0, 0}},   {-1, 1, {0, 1, 0, 0}},
        {-1, 2, {0, 1, -1, 0}},  {-1, 3, {0, 1, -2, 0}},  {-1, 4, {0, 1, -3, 0}},
        {-1, 5, {0, 1, -4, 0}},  {-1, 6, {0, 1, -5, -1}}, {-1, 7, {0, 1, -6, -4}},
        {0, 1, {0, 0, 1, 0}},    {0, 2, {0, 0, 1, 0}},    {0, 3, {0, 0, 1, 0}},
        {0, 4, {0, 0, 1, 0}},    {0, 5, {0, 0, 1, 1}},    {0, 6, {0, 0, 1, 3}},
        {1, 2, {0, 0, 0, 0}},    {1, 3, {0, 0, 0, 0}},    {1, 4, {0, 0, 0, -1}},
        {1, 5, {0, 0, 0, -2}},   {2, 3, {0, 0, 0, 1}},    {2, 4, {0, 0, 0, 1}},
    };
    for (int m = 5; m <= 8; ++m) {
        const int seed[4] = {m - 2, m - 1, m, m + 2};
        for (int s = 0; s < 4; ++s) {
            HomCochain c = recurrence_cochain(unit(seed[s]), -m, 30);
            for (const auto& e : table) {
                INFO("m=" << m << " seed=" << s << " at (" << m + e.di << "," << m + e.dj << ")");
                CHECK(c.at({m + e.di, m + e.dj}) == e.coef[s]);
            }
        }
    }
}
