#include "filiform/algebra.hpp"
#include "filiform/error.hpp"
#include "filiform/linalg.hpp"
#include "filiform/rational.hpp"

#include <doctest.h>

using namespace filiform;

namespace {

DegreeVec single(int k, const Rational& c) { return {{k, c}}; }

BasisRescale factorial_scale(int N) {
    BasisRescale s;
    for (int i = 1; i <= N; ++i) {
        s.scale[i] = i >= 4 ? Rational(1) / Rational(factorial(i - 2)) : Rational(1);
    }
    return s;
}

}  // namespace

TEST_CASE("rationals stay canonical") {
    CHECK(parse_rational("6/-4") == Rational(-3, 2));
    CHECK(to_string(parse_rational("10/4")) == "5/2");
    CHECK(to_string(Rational(-7)) == "-7");
    CHECK(make_rational("123456789012345678901234567890", "10") == parse_rational("12345678901234567890123456789"));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
    CHECK(factorial(11) == 39916800);
    CHECK(binomial(7, 3) == 35);
}

TEST_CASE("sparse elimination") {
    // x + y = 3, 2x - y = 0
    std::vector<SparseRow> A{make_row({{0, 1}, {1, 1}}), make_row({{0, 2}, {1, -1}})};
    auto x = solve(A, {3, 0}, 2);
    REQUIRE(x);
    CHECK((*x)[0] == 1);
    CHECK((*x)[1] == 2);
    CHECK(rank({make_row({{0, 1}, {1, 2}}), make_row({{0, 2}, {1, 4}})}, 2) == 1);
    CHECK_FALSE(solve({make_row({{0, 1}}), make_row({{0, 2}})}, {1, 1}, 1));
    // free columns are set to zero
    auto y = solve({make_row({{0, 1}, {2, 1}})}, {5}, 3);
    REQUIRE(y);
    CHECK((*y)[0] == 5);
    CHECK((*y)[2] == 0);
}

TEST_CASE("m0 relations") {
    GradedAlgebra A = make_m0(10);
    CHECK(A.bracket(1, 5) == single(6, 1));
    CHECK(A.bracket(2, 3).empty());
    CHECK(A.bracket(1, 1).empty());
    CHECK(A.bracket(5, 1) == single(6, -1));
    CHECK_THROWS_AS(make_m0(2), Error);
}

TEST_CASE("m2 relations") {
    GradedAlgebra A = make_m2(12);
    CHECK(A.bracket(2, 3) == single(5, 1));
    CHECK(A.bracket(3, 4).empty());
    CHECK(A.bracket(1, 4) == single(5, 1));
    CHECK(A.coeff(2, 10, 12) == 1);
    CHECK_THROWS_AS(make_m2(4), Error);
}

TEST_CASE("L1 relations") {
    GradedAlgebra A = make_L1(12);
    CHECK(A.bracket(2, 3) == single(5, 1));
    CHECK(A.bracket(1, 4) == single(5, 3));
    CHECK(A.bracket(3, 3).empty());
    CHECK(A.coeff(4, 2, 6) == -2);
}

TEST_CASE("brackets past the truncation are undefined") {
    GradedAlgebra A = make_m0(10);
    CHECK_FALSE(A.defined(1, 10));
    CHECK_THROWS_AS(A.bracket(1, 10), Error);
    CHECK_FALSE(jacobi_in_window(A, 1, 2, 9));
    try {
        jacobi_defect(A, 1, 2, 9);
        FAIL("expected a window error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WindowError);
    }
}

TEST_CASE("Jacobi holds for the named algebras") {
    for (int N : {12, 30, 60})
        for (const auto& A : {make_m0(N), make_m2(N), make_L1(N)})
            for (int i = 1; i <= N; ++i)
                for (int j = i + 1; j <= N; ++j)
                    for (int k = j + 1; i + j + k <= N; ++k)
                        if (jacobi_in_window(A, i, j, k)) REQUIRE(jacobi_defect(A, i, j, k).empty());
}

TEST_CASE("a lone [e2,e3] = e5 breaks Jacobi") {
    GradedAlgebra A = make_m0(10);
    A.set_bracket(2, 3, 5, 1);
    // [[e1,e2],e3] = 0, [[e2,e3],e1] = [e5,e1] = -e6, [[e3,e1],e2] = -[e4,e2] = 0
    CHECK(jacobi_defect(A, 1, 2, 3) == single(6, -1));
}

TEST_CASE("antisymmetry of the stored table") {
    GradedAlgebra A = make_L1(20);
    for (int i = 1; i <= 20; ++i) {
        CHECK(A.coeff(i, i, 2 * i) == 0);
        for (int j = 1; i + j <= 20; ++j) CHECK(A.coeff(j, i, i + j) == -A.coeff(i, j, i + j));
    }
    CHECK_THROWS_AS(A.set_bracket(3, 3, 6, 1), Error);
}

TEST_CASE("factorial rescale of m0") {
    const int N = 15;
    GradedAlgebra A = rescale(make_m0(N), factorial_scale(N));
    for (int i = 4; i < N; ++i) CHECK(A.coeff(1, i, i + 1) == i - 1);
    CHECK(A.coeff(1, 2, 3) == 1);
    CHECK(A.coeff(1, 3, 4) == 2);
}

TEST_CASE("rescale round trip and identity") {
    const int N = 25;
    GradedAlgebra L = make_L1(N);
    BasisRescale s = factorial_scale(N);
    CHECK(rescale(rescale(L, s), s.inverse()) == L);
    CHECK(rescale(L, BasisRescale::identity(N)) == L);
    BasisRescale bad = BasisRescale::identity(N);
    bad.scale[3] = 0;
    CHECK_THROWS_AS(rescale(L, bad), Error);
}

TEST_CASE("rescaling keeps Jacobi") {
    const int N = 20;
    GradedAlgebra A = rescale(make_m2(N), factorial_scale(N));
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j)
            for (int k = j + 1; i + j + k <= N; ++k)
                if (jacobi_in_window(A, i, j, k)) REQUIRE(jacobi_defect(A, i, j, k).empty());
}

TEST_CASE("weight tags") {
    CHECK(make_m0(20).homogeneous(0));
    CHECK(make_L1(20).homogeneous(0));
    CHECK(make_m2(20).homogeneous(0));
    GradedAlgebra mixed = make_m0(20);
    mixed.set_bracket(2, 3, 6, 1);
    CHECK_FALSE(mixed.homogeneous(0));
    GradedAlgebra tagged(10, "bad", {0});
    tagged.set_bracket(2, 3, 6, 1);
    CHECK_THROWS_AS(tagged.check_weights(), Error);
}
