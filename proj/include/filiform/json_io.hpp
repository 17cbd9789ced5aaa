#pragma once

#include "filiform/algebra.hpp"
#include "filiform/cochain.hpp"
#include "filiform/deformation.hpp"
#include "filiform/massey.hpp"
#include "filiform/solver.hpp"

#include <json.hpp>

#include <string>

namespace filiform {

using Json = nlohmann::ordered_json;

// Rationals travel as decimal strings, "p" or "p/q".
Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json algebra_json(const GradedAlgebra& A);
GradedAlgebra algebra_from_json(const Json& j);

Json cochain_json(const HomCochain& c);
HomCochain cochain_from_json(const Json& j);
HomCochain read_cochain_file(const std::string& path);

Json cohomology_json(const CohomologyReport& r);
Json quadratic_json(const Quadratic& q);
Json system_json(const QuadraticSystem& s);
Json branch_json(const SolutionBranch& b);
Json curve_json(const CurveBranch& c);
Json solve_json(const SolveResult& r);
Json extend_json(const ExtendResult& r);
Json deformation_check_json(const DeformationCheck& c);
Json count_json(const DeformationCount& c);

}  // namespace filiform
