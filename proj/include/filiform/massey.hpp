#pragma once

#include "filiform/cochain.hpp"
#include "filiform/rational.hpp"

#include <array>
#include <optional>

namespace filiform {

using Triple = std::array<int, 3>;

struct TripleCheck {
    bool ok = true;
    std::optional<Triple> witness;
};

// M_{ijk} = a_{ij} a_{i+j+l,k} + a_{jk} a_{j+k+l,i} + a_{ki} a_{k+i+l,j}, any index order.
// Throws window-error if a nonzero term needs a coordinate beyond max_index.
Rational massey_square(const HomCochain& omega, int i, int j, int k);
bool square_in_window(const HomCochain& omega, int i, int j, int k);

// Degree 3, weight 2l cochain of all squares on triples with entries <= window;
// triples that need coordinates beyond the cochain's window are left out.
HomCochain massey_square_cochain(const HomCochain& omega, int window);

// Triples outside the cochain's window are skipped.
TripleCheck all_squares_zero(const HomCochain& omega, int window);

bool compensable(int i, int j, int k, int l);

// Solves d(alpha) = M on the window, lexicographically earliest pivots.
std::optional<HomCochain> try_compensate(const HomCochain& omega, int window);

struct CubeInput {
    HomCochain omega;
    HomCochain alpha;
    int window;
};

// Checks d(alpha) = M on the window; throws invalid-compensator otherwise.
CubeInput make_cube_input(HomCochain omega, HomCochain alpha, int window);

// N_{ijk} = a_{ij} b_{i+j+l,k} + b_{ij} a_{i+j+2l,k} + cyclic.
Rational massey_cube(const CubeInput& input, int i, int j, int k);
TripleCheck all_cubes_zero(const CubeInput& input, int window);

// M_{ijk} + M_{i(j-1)(k+1)} + M_{(i+1)(j-1)k} - M_{i(j-1)k}
Rational relation_defect(const HomCochain& omega, int i, int j, int k);

}  // namespace filiform
