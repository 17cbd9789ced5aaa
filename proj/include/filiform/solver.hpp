#pragma once

#include "filiform/poly.hpp"
#include "filiform/rational.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace filiform {

// M2rs: triples (2,r,s); M23k: triples (2,3,k); Full: every triple with i >= 2.
enum class EquationSet { M2rs, M23k, Full };

const char* equation_set_name(EquationSet s);
EquationSet parse_equation_set(const std::string& s);

// Keys are variable subscripts (m,n), m <= n, of the diagonal unknowns u_m.
using Quadratic = std::map<std::pair<int, int>, Rational>;

struct QuadraticEquation {
    int level = 0;
    std::array<int, 3> source{};
    Quadratic terms;  // presented form
    Quadratic raw;    // M_{ijk} before reduction
};

struct QuadraticSystem {
    int l = 0;
    int V = 0;  // number of unknowns u_2 .. u_{V+1}
    int level_max = 0;
    EquationSet set = EquationSet::M2rs;
    std::vector<QuadraticEquation> equations;
    std::map<int, int> rank_by_level;  // cumulative rank of the raw equations

    int first_var() const { return 2; }
    int last_var() const { return V + 1; }
};

// Largest subscript m whose u_m can occur at this level.
int max_variable_at_level(int level, int l);

// Quadratic form of M_{ijk} in the u_m with m <= last_var (others taken as 0).
Quadratic massey_quadratic(int i, int j, int k, int l, int last_var);

QuadraticSystem build_system(int l, int V, int level_max, EquationSet set = EquationSet::M2rs);

Rational evaluate(const Quadratic& q, const std::map<int, Rational>& u);
std::string render(const Quadratic& q);
std::string variable_name(int m);

struct SolutionBranch {
    int l = 0;
    EquationSet set = EquationSet::M2rs;
    std::map<int, Rational> assignments;  // every u_m of the system
    int normalization = 0;                // subscript of the variable set to 1
    int verified_level = 0;
};

// One-parameter branch u_m = f_m(s).
struct CurveBranch {
    int l = 0;
    std::map<int, RatFunc> assignments;
    int normalization = 0;
    int parameter = 0;  // subscript that was freed
    int verified_level = 0;
};

struct SolverConfig {
    int max_branches = 32;
};

struct SolveResult {
    std::vector<SolutionBranch> branches;
    std::vector<CurveBranch> curves;
    std::vector<int> unconstrained_charts;
    std::vector<std::string> diagnostics;
    int irrational_candidates = 0;
    bool depth_exceeded = false;
};

SolveResult solve_projective(const QuadraticSystem& system, const SolverConfig& config = {});

struct ExtendResult {
    bool survives = false;
    SolutionBranch extended;
    std::vector<std::string> diagnostics;
};

ExtendResult extend_check(const SolutionBranch& branch, int next_levels,
                          const SolverConfig& config = {});

struct DimensionReport {
    int dimension = 0;
    std::vector<int> per_branch;      // points first, then curves
    std::vector<int> jacobian_bound;  // V - Jacobian rank, same order
};

DimensionReport dimension_probe(int l, int V, int level_max, EquationSet set = EquationSet::M2rs,
                                const SolverConfig& config = {});

}  // namespace filiform
