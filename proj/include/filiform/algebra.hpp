#pragma once

#include "filiform/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>

namespace filiform {

// Element of the algebra as degree -> coefficient; absent degree is zero.
using DegreeVec = std::map<int, Rational>;

void add_scaled(DegreeVec& acc, const DegreeVec& v, const Rational& f);

// Truncated N-graded Lie algebra with one-dimensional components e_1..e_N.
//
// With weight tags, [e_i,e_j] is defined iff i+j+max(weights) <= N, so a
// bracket that could land above N is reported as out of window instead of
// being read as zero. Without tags every bracket of e_1..e_N is defined.
class GradedAlgebra {
public:
    using Table = std::map<std::pair<int, int>, DegreeVec>;

    explicit GradedAlgebra(int N, std::string name = {}, std::set<int> weights = {});

    int N() const { return N_; }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }
    const std::set<int>& weights() const { return weights_; }
    void set_weights(std::set<int> weights) { weights_ = std::move(weights); }

    // Any ordered pair; the antisymmetric partner is implied.
    void set_bracket(int i, int j, int k, const Rational& c);
    void add_bracket(int i, int j, int k, const Rational& c);

    bool defined(int i, int j) const;
    DegreeVec bracket(int i, int j) const;
    // Stored structure constant, no window check.
    Rational coeff(int i, int j, int k) const;

    const Table& table() const { return table_; }

    // Throws unless every entry lands in some degree i+j+w with w a weight tag.
    void check_weights() const;
    // True iff every entry satisfies k = i+j+w for this fixed w.
    bool homogeneous(int w) const;

    bool operator==(const GradedAlgebra& other) const {
        return N_ == other.N_ && table_ == other.table_;
    }

private:
    int N_;
    std::string name_;
    std::set<int> weights_;
    Table table_;
};

GradedAlgebra make_m0(int N);
GradedAlgebra make_m2(int N);
GradedAlgebra make_L1(int N);

// [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
DegreeVec jacobi_defect(const GradedAlgebra& A, int i, int j, int k);
bool jacobi_in_window(const GradedAlgebra& A, int i, int j, int k);

// e~_i = scale[i] e_i
struct BasisRescale {
    std::map<int, Rational> scale;

    static BasisRescale identity(int N);
    BasisRescale inverse() const;
};

GradedAlgebra rescale(const GradedAlgebra& A, const BasisRescale& s);

}  // namespace filiform
