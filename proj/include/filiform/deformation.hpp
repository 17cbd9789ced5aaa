#pragma once

#include "filiform/algebra.hpp"
#include "filiform/cochain.hpp"
#include "filiform/massey.hpp"
#include "filiform/rational.hpp"
#include "filiform/solver.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace filiform {

// [e_i,e_j]_t = [e_i,e_j] + t a_{ij} e_{i+j+l} + t^2 b_{ij} e_{i+j+2l}
struct DeformationSpec {
    GradedAlgebra base;
    HomCochain cocycle;
    std::optional<HomCochain> quadratic;
    Rational t = 1;
};

DeformationSpec make_spec(HomCochain cocycle, int N, Rational t = 1);

GradedAlgebra deform(const DeformationSpec& spec);

struct DeformationCheck {
    bool ok = true;
    std::optional<Triple> witness;
    int power = 0;  // power of t carrying the first nonzero defect
    int triples_checked = 0;
};

// Jacobi identity of the deformed bracket with t kept symbolic: the defect
// is a polynomial in t of degree <= 4 and every coefficient must vanish on
// all in-window triples with entries <= window.
DeformationCheck is_true_deformation(const DeformationSpec& spec, int window);

// Numeric cross-check at a fixed t.
bool jacobi_holds_at(const DeformationSpec& spec, const Rational& t, int window);

struct CompensationResult {
    DeformationSpec spec;
    DeformationCheck linear;
    DeformationCheck final;
    bool compensated = false;
    std::string note;
};

// When the linear deformation fails at t^2 only, attaches -alpha with
// d(alpha) equal to the Massey square, provided the Massey cubes vanish.
CompensationResult with_compensation(DeformationSpec spec, int window);

struct WeightZeroTarget {
    std::string name;
    DeformationSpec spec;
    GradedAlgebra target;
};

// e~_1 = e_1, e~_i = e_i/(i-2)! for i >= 2
BasisRescale l1_basis(int N);
// b_{ij} = j - i for 2 <= i < j, zero on e_1
HomCochain l1_target_cocycle(int max_index);
// The same cocycle written in the basis e_i.
HomCochain l1_target_cocycle_standard(int max_index);

std::array<WeightZeroTarget, 2> weight_zero_targets(int N);

struct SuppressedWitt {
    int m = 2;
    int N = 0;
    GradedAlgebra algebra;  // basis g_k
    HomCochain extracted_cocycle;
};

// L_1 restricted to e_1, e_{m+1}, e_{m+2}, ..., relabelled f_1 = e_1,
// f_k = e_{k+m-1} and rescaled g_1 = f_1, g_k = (k+m-3)!/(m-1)! f_k.
SuppressedWitt l1_suppressed(int m, int N);

// Cocycle with a_{1,m} = 1 at weight -m, all other a_{1,j} and all diagonal
// seeds a_{i,i+1} zero, remaining coordinates lexicographically earliest.
HomCochain a1_completion(int m, int max_index);
HomCochain a1_completion(int m, int j, int max_index);
// a1_completion plus the diagonal-seed correction that kills the
// non-compensable cross terms with the m-family; a cocycle with a_{1,m} = 1.
HomCochain a1_direction(int m, int max_index, int window);
// The bare cochain a_{1,m} = 1 at weight -m.
HomCochain a1_literal(int m, int max_index);

struct CatalogueMember {
    std::string name;
    HomCochain cochain;
    bool cocycle = false;
    bool square_zero = false;
    bool compensated = false;
    bool true_deformation = false;
    bool coboundary = false;
    std::optional<Index> cocycle_witness;
    std::optional<Triple> square_witness;
    std::string note;
};

struct CountConfig {
    int max_index = 24;
    int window = 12;
    int vars = 6;
    int level_max = 15;
    int extend_levels = 6;
    SolverConfig solver;
};

struct DeformationCount {
    int l = 0;
    std::vector<CatalogueMember> members;
    // rank of the true members that are not coboundaries, as cochains
    int dimension = 0;
    // rank of the same members modulo coboundaries
    int cohomology_rank = 0;
    std::optional<int> expected;
    std::vector<std::string> notes;
};

DeformationCount count_true_deformations(int l, const CountConfig& config = {});

}  // namespace filiform
