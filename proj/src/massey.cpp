#include "filiform/massey.hpp"

#include "filiform/error.hpp"
#include "filiform/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

namespace filiform {

namespace {

// a_{ij} b_{i+j+l,k}; nullopt when a needed coordinate lies beyond max_index.
std::optional<Rational> pair_term(const HomCochain& x, const HomCochain& y, int i, int j, int k) {
    if (i == j) return Rational(0);
    if (std::max(i, j) > x.max_index()) return std::nullopt;
    Rational v = x.at({i, j});
    if (v == 0) return Rational(0);
    int d = i + j + x.weight();
    if (d == k) return Rational(0);
    if (std::max(d, k) > y.max_index()) return std::nullopt;
    return v * y.at({d, k});
}

std::optional<Rational> square(const HomCochain& a, int i, int j, int k) {
    Rational v;
    for (auto [x, y, z] : {Triple{i, j, k}, Triple{j, k, i}, Triple{k, i, j}}) {
        auto t = pair_term(a, a, x, y, z);
        if (!t) return std::nullopt;
        v += *t;
    }
    return v;
}

std::optional<Rational> cube(const HomCochain& a, const HomCochain& b, int i, int j, int k) {
    Rational v;
    for (auto [x, y, z] : {Triple{i, j, k}, Triple{j, k, i}, Triple{k, i, j}}) {
        auto s = pair_term(a, b, x, y, z), t = pair_term(b, a, x, y, z);
        if (!s || !t) return std::nullopt;
        v += *s + *t;
    }
    return v;
}

std::string triple_str(int i, int j, int k) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

}  // namespace

Rational massey_square(const HomCochain& omega, int i, int j, int k) {
    if (omega.degree() != 2) throw Error(ErrorCode::UnsupportedDegree, "Massey square of a 2-cochain");
    auto v = square(omega, i, j, k);
    if (!v) throw Error(ErrorCode::WindowError, "square " + triple_str(i, j, k) + " outside window");
    return *v;
}

bool square_in_window(const HomCochain& omega, int i, int j, int k) {
    return square(omega, i, j, k).has_value();
}

HomCochain massey_square_cochain(const HomCochain& omega, int window) {
    HomCochain M(3, 2 * omega.weight(), window);
    for (const auto& T : increasing_tuples(3, 1, window)) {
        if (T[0] + T[1] + T[2] + 2 * omega.weight() < 1) continue;
        auto v = square(omega, T[0], T[1], T[2]);
        if (v && *v != 0) M.set(T, *v);
    }
    return M;
}

TripleCheck all_squares_zero(const HomCochain& omega, int window) {
    if (omega.degree() != 2) throw Error(ErrorCode::UnsupportedDegree, "Massey square of a 2-cochain");
    for (const auto& T : increasing_tuples(3, 1, window)) {
        auto v = square(omega, T[0], T[1], T[2]);
        if (v && *v != 0) return {false, Triple{T[0], T[1], T[2]}};
    }
    return {};
}

bool compensable(int i, int j, int k, int l) {
    if (l > -2) return false;
    const int s = 1 - 2 * l;
    return i + j == s || j + k == s || i + k == s;
}

std::optional<HomCochain> try_compensate(const HomCochain& omega, int window) {
    const int l = omega.weight();
    HomCochain M = massey_square_cochain(omega, window);
    for (const auto& [T, v] : M.coeffs())
        if (T[0] >= 2 && !compensable(T[0], T[1], T[2], l))
            throw Error(ErrorCode::Obstructed,
                        "non-compensable square M" + triple_str(T[0], T[1], T[2]) + " = " +
                            to_string(v));

    GradedAlgebra base = make_m0(3 * (window + 1) + 2 * std::abs(l) + 2);
    std::vector<std::pair<Index, std::map<Index, Rational>>> forms;
    std::set<Index> unknowns;
    for (const auto& T : increasing_tuples(3, 1, window)) {
        if (T[0] + T[1] + T[2] + 2 * l < 1 || !square(omega, T[0], T[1], T[2])) continue;
        auto f = differential_form(base, 2, 2 * l, T);
        for (const auto& [idx, v] : f) unknowns.insert(idx);
        forms.emplace_back(T, std::move(f));
    }
    std::map<Index, int> col;
    int top = window + 1;
    for (const auto& idx : unknowns) {
        col.emplace(idx, static_cast<int>(col.size()));
        top = std::max(top, idx.back());
    }
    std::vector<SparseRow> A;
    std::vector<Rational> b;
    for (const auto& [T, f] : forms) {
        std::vector<std::pair<int, Rational>> entries;
        for (const auto& [idx, v] : f) entries.emplace_back(col.at(idx), v);
        A.push_back(make_row(std::move(entries)));
        b.push_back(M.at(T));
    }
    auto x = solve(A, b, static_cast<int>(col.size()));
    if (!x) return std::nullopt;
    HomCochain alpha(2, 2 * l, top);
    for (const auto& [idx, c] : col) alpha.set(idx, (*x)[c]);
    return alpha;
}

CubeInput make_cube_input(HomCochain omega, HomCochain alpha, int window) {
    if (alpha.degree() != 2 || alpha.weight() != 2 * omega.weight())
        throw Error(ErrorCode::InvalidCompensator, "compensator must be a 2-cochain of weight 2l");
    GradedAlgebra base = default_base(alpha);
    for (const auto& T : increasing_tuples(3, 1, window)) {
        if (T[0] + T[1] + T[2] + alpha.weight() < 1) continue;
        auto rhs = square(omega, T[0], T[1], T[2]);
        if (!rhs) continue;
        if (coboundary_at(alpha, base, T) != *rhs)
            throw Error(ErrorCode::InvalidCompensator,
                        "d(alpha) differs from the Massey square at " + triple_str(T[0], T[1], T[2]));
    }
    return {std::move(omega), std::move(alpha), window};
}

Rational massey_cube(const CubeInput& in, int i, int j, int k) {
    auto v = cube(in.omega, in.alpha, i, j, k);
    if (!v) throw Error(ErrorCode::WindowError, "cube " + triple_str(i, j, k) + " outside window");
    return *v;
}

TripleCheck all_cubes_zero(const CubeInput& in, int window) {
    for (const auto& T : increasing_tuples(3, 1, window)) {
        auto v = cube(in.omega, in.alpha, T[0], T[1], T[2]);
        if (v && *v != 0) return {false, Triple{T[0], T[1], T[2]}};
    }
    return {};
}

Rational relation_defect(const HomCochain& omega, int i, int j, int k) {
    return massey_square(omega, i, j, k) + massey_square(omega, i, j - 1, k + 1) +
           massey_square(omega, i + 1, j - 1, k) - massey_square(omega, i, j - 1, k);
}

}  // namespace filiform
