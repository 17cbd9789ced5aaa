#include "filiform/deformation.hpp"
#include "filiform/error.hpp"
#include "filiform/families.hpp"

#include <doctest.h>

using namespace filiform;

TEST_CASE("2-family deforms m0 into m2") {
    DeformationSpec s = make_spec(k_family({2, 0, 30}), 30);
    CHECK(deform(s) == make_m2(30));
    CHECK(is_true_deformation(s, 15).ok);
}

TEST_CASE("t = 0 leaves m0") {
    for (int k : {2, 3, 4}) {
        DeformationSpec s = make_spec(k_family({k, 0, 30}), 30, 0);
        CHECK(deform(s) == make_m0(30));
    }
}

TEST_CASE("square-zero deformations hold at sample parameters") {
    for (HomCochain c : {k_family({2, 0, 30}), k_family({4, -4, 30}), k_family({5, -5, 30})}) {
        DeformationSpec s = make_spec(c, 30);
        for (Rational t : {Rational(1), Rational(-1), Rational(2), Rational(1, 3)})
            CHECK(jacobi_holds_at(s, t, 14));
    }
}

TEST_CASE("linear 3-family fails at t^2 and is repaired") {
    DeformationSpec s = make_spec(k_family({3, -2, 30}), 30);
    DeformationCheck lin = is_true_deformation(s, 12);
    CHECK_FALSE(lin.ok);
    CHECK(lin.power == 2);
    CompensationResult r = with_compensation(s, 12);
    CHECK(r.compensated);
    CHECK(r.final.ok);
    REQUIRE(r.spec.quadratic);
    CHECK(r.spec.quadratic->at({2, 3}) == -1);
}

TEST_CASE("no square-zero 3-family at weight -1") {
    DeformationSpec s = make_spec(k_family({3, -1, 30}), 30);
    CHECK_FALSE(is_true_deformation(s, 12).ok);
    CHECK_FALSE(with_compensation(s, 12).final.ok);
}

TEST_CASE("m-families are true deformations") {
    for (int m = 2; m <= 8; ++m) {
        INFO("m=" << m);
        CHECK(is_true_deformation(make_spec(k_family({m, -m, 36}), 36), 16).ok);
    }
}

TEST_CASE("weight-zero targets") {
    auto t = weight_zero_targets(30);
    CHECK(deform(t[0].spec) == make_m2(30));
    CHECK(deform(t[1].spec) == t[1].target);
    const HomCochain& b = t[1].spec.cocycle;
    for (int j = 2; j <= 12; ++j)
        for (int k = 2; k <= 12; ++k) {
            if (j == k) continue;
            CHECK(Rational(j - 1) * b.at({j + 1, k}) + Rational(k - 1) * b.at({j, k + 1}) ==
                  Rational(j + k - 1) * b.at({j, k}));
        }
    DeformationSpec zero = t[1].spec;
    zero.t = 0;
    CHECK(deform(zero) == zero.base);
    CHECK(l1_target_cocycle(20).at({3, 7}) == 4);
    CHECK(is_cocycle(l1_target_cocycle_standard(20)).ok);
}

TEST_CASE("suppressed Witt algebras") {
    auto s2 = l1_suppressed(2, 30);
    CHECK(s2.extracted_cocycle.weight() == 1);
    CHECK(s2.extracted_cocycle.at({2, 3}) == Rational(1, 60));
    CHECK(s2.extracted_cocycle.at({3, 4}) == Rational(1, 420));
    CHECK(s2.extracted_cocycle.at({4, 5}) == Rational(1, 2520));
    for (int m = 2; m <= 6; ++m) {
        auto s = l1_suppressed(m, 40);
        INFO("m=" << m);
        CHECK(s.extracted_cocycle.weight() == m - 1);
        CHECK(is_cocycle(s.extracted_cocycle).ok);
        CHECK(all_squares_zero(s.extracted_cocycle, 14).ok);
    }
    CHECK_THROWS_AS(l1_suppressed(4, 10), Error);
}

TEST_CASE("a_{1,m} directions") {
    for (int m = 2; m <= 6; ++m) {
        HomCochain d = a1_direction(m, 30, 12);
        INFO("m=" << m);
        CHECK(d.at({1, m}) == 1);
        CHECK(is_cocycle(d).ok);
        CHECK_FALSE(find_primitive(d).has_value());
    }
    CHECK(a1_literal(4, 20).coeffs().size() == 1);
}

TEST_CASE("catalogue counts at small weights") {
    CHECK(count_true_deformations(-1).dimension == 0);
    CHECK(count_true_deformations(-2).dimension == 3);
    CHECK(count_true_deformations(-3).dimension == 2);
    CHECK(count_true_deformations(0).dimension == 2);
}
