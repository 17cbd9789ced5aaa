#include "filiform/algebra.hpp"

#include "filiform/error.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace filiform {

void add_scaled(DegreeVec& acc, const DegreeVec& v, const Rational& f) {
    if (f == 0) return;
    for (const auto& [k, c] : v) {
        Rational& slot = acc[k];
        slot += f * c;
        if (slot == 0) acc.erase(k);
    }
}

GradedAlgebra::GradedAlgebra(int N, std::string name, std::set<int> weights)
    : N_(N), name_(std::move(name)), weights_(std::move(weights)) {
    if (N < 1) throw Error(ErrorCode::InvalidTruncation, "N must be positive");
}

void GradedAlgebra::set_bracket(int i, int j, int k, const Rational& c) {
    if (i == j) {
        if (c != 0) throw Error(ErrorCode::InvalidArgument, "[e_i,e_i] must vanish");
        return;
    }
    if (i < 1 || j < 1 || i > N_ || j > N_ || k < 1 || k > N_)
        throw Error(ErrorCode::InvalidArgument, "bracket entry outside 1..N");
    Rational v = i < j ? c : Rational(-c);
    auto key = std::minmax(i, j);
    auto& vec = table_[{key.first, key.second}];
    if (v == 0)
        vec.erase(k);
    else
        vec[k] = v;
    if (vec.empty()) table_.erase({key.first, key.second});
}

void GradedAlgebra::add_bracket(int i, int j, int k, const Rational& c) {
    set_bracket(i, j, k, coeff(i, j, k) + c);
}

bool GradedAlgebra::defined(int i, int j) const {
    if (i < 1 || j < 1 || i > N_ || j > N_) return false;
    if (weights_.empty()) return true;
    return i + j + *weights_.rbegin() <= N_;
}

DegreeVec GradedAlgebra::bracket(int i, int j) const {
    if (!defined(i, j))
        throw Error(ErrorCode::WindowError,
                    "[e_" + std::to_string(i) + ",e_" + std::to_string(j) + "] outside window");
    if (i == j) return {};
    auto key = std::minmax(i, j);
    auto it = table_.find({key.first, key.second});
    if (it == table_.end()) return {};
    if (i < j) return it->second;
    DegreeVec neg = it->second;
    for (auto& [k, c] : neg) c = -c;
    return neg;
}

Rational GradedAlgebra::coeff(int i, int j, int k) const {
    if (i == j) return 0;
    auto key = std::minmax(i, j);
    auto it = table_.find({key.first, key.second});
    if (it == table_.end()) return 0;
    auto kt = it->second.find(k);
    if (kt == it->second.end()) return 0;
    return i < j ? kt->second : Rational(-kt->second);
}

void GradedAlgebra::check_weights() const {
    if (weights_.empty()) return;
    for (const auto& [ij, vec] : table_)
        for (const auto& [k, c] : vec)
            if (!weights_.count(k - ij.first - ij.second))
                throw Error(ErrorCode::InvalidArgument,
                            "entry (" + std::to_string(ij.first) + "," + std::to_string(ij.second) +
                                ")->" + std::to_string(k) + " violates the weight tag");
}

bool GradedAlgebra::homogeneous(int w) const {
    for (const auto& [ij, vec] : table_)
        for (const auto& [k, c] : vec)
            if (k != ij.first + ij.second + w) return false;
    return true;
}

GradedAlgebra make_m0(int N) {
    if (N < 3) throw Error(ErrorCode::InvalidTruncation, "m0 needs N >= 3");
    GradedAlgebra A(N, "m0", {0});
    for (int i = 2; i <= N - 1; ++i) A.set_bracket(1, i, i + 1, 1);
    return A;
}

GradedAlgebra make_m2(int N) {
    if (N < 5) throw Error(ErrorCode::InvalidTruncation, "m2 needs N >= 5");
    GradedAlgebra A = make_m0(N);
    A.set_name("m2");
    for (int j = 3; j <= N - 2; ++j) A.set_bracket(2, j, j + 2, 1);
    return A;
}

GradedAlgebra make_L1(int N) {
    if (N < 3) throw Error(ErrorCode::InvalidTruncation, "L1 needs N >= 3");
    GradedAlgebra A(N, "L1", {0});
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; i + j <= N; ++j) A.set_bracket(i, j, i + j, j - i);
    return A;
}

namespace {

// Degrees that [e_i,e_j] may occupy, judged from the tags or the table.
std::vector<int> possible_degrees(const GradedAlgebra& A, int i, int j) {
    std::vector<int> out;
    if (A.weights().empty()) {
        for (const auto& [k, c] : A.bracket(i, j)) out.push_back(k);
    } else {
        for (int w : A.weights())
            if (i + j + w >= 1) out.push_back(i + j + w);
    }
    return out;
}

}  // namespace

bool jacobi_in_window(const GradedAlgebra& A, int i, int j, int k) {
    const std::array<std::pair<int, int>, 3> pairs{{{i, j}, {j, k}, {k, i}}};
    const std::array<int, 3> third{k, i, j};
    for (int p = 0; p < 3; ++p) {
        auto [a, b] = pairs[p];
        if (!A.defined(a, b)) return false;
        for (int d : possible_degrees(A, a, b))
            if (!A.defined(d, third[p])) return false;
    }
    return true;
}

DegreeVec jacobi_defect(const GradedAlgebra& A, int i, int j, int k) {
    if (i == j || j == k || i == k)
        throw Error(ErrorCode::InvalidArgument, "jacobi_defect needs distinct indices");
    if (!jacobi_in_window(A, i, j, k))
        throw Error(ErrorCode::WindowError, "triple (" + std::to_string(i) + "," +
                                                std::to_string(j) + "," + std::to_string(k) +
                                                ") outside window");
    DegreeVec out;
    const std::array<std::array<int, 3>, 3> cyc{{{i, j, k}, {j, k, i}, {k, i, j}}};
    for (const auto& [a, b, c] : cyc)
        for (const auto& [d, coef] : A.bracket(a, b)) add_scaled(out, A.bracket(d, c), coef);
    return out;
}

BasisRescale BasisRescale::identity(int N) {
    BasisRescale s;
    for (int i = 1; i <= N; ++i) s.scale[i] = 1;
    return s;
}

BasisRescale BasisRescale::inverse() const {
    BasisRescale s;
    for (const auto& [i, v] : scale) {
        if (v == 0) throw Error(ErrorCode::InvalidRescale, "zero scale factor");
        s.scale[i] = 1 / v;
    }
    return s;
}

GradedAlgebra rescale(const GradedAlgebra& A, const BasisRescale& s) {
    for (int i = 1; i <= A.N(); ++i) {
        auto it = s.scale.find(i);
        if (it == s.scale.end())
            throw Error(ErrorCode::InvalidRescale, "no scale for index " + std::to_string(i));
        if (it->second == 0)
            throw Error(ErrorCode::InvalidRescale, "zero scale for index " + std::to_string(i));
    }
    GradedAlgebra out(A.N(), A.name(), A.weights());
    for (const auto& [ij, vec] : A.table())
        for (const auto& [k, c] : vec)
            out.set_bracket(ij.first, ij.second, k,
                            c * s.scale.at(ij.first) * s.scale.at(ij.second) / s.scale.at(k));
    return out;
}

}  // namespace filiform
