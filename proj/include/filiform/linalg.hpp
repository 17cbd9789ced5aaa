#pragma once

#include "filiform/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace filiform {

// Sparse row: (column, value) pairs, strictly increasing columns, no zeros.
using SparseRow = std::vector<std::pair<int, Rational>>;

SparseRow make_row(std::vector<std::pair<int, Rational>> entries);
Rational row_at(const SparseRow& row, int col);
// a + f * b
SparseRow axpy(const SparseRow& a, const Rational& f, const SparseRow& b);

struct Echelon {
    int ncols = 0;
    std::vector<int> pivots;      // increasing
    std::vector<SparseRow> rows;  // rows[r] has leading 1 at pivots[r]
    bool reduced = false;

    int rank() const { return static_cast<int>(pivots.size()); }
};

// Row echelon form; columns are eliminated left to right and, among the rows
// competing for a pivot, the one whose entry has the fewest bits wins.
Echelon row_echelon(std::vector<SparseRow> rows, int ncols);
Echelon reduced_row_echelon(std::vector<SparseRow> rows, int ncols);
int rank(std::vector<SparseRow> rows, int ncols);

// Remainder of v after subtracting multiples of the rows of a reduced echelon
// form; zero iff v lies in the row space.
SparseRow normal_form(const Echelon& rref, SparseRow v);

// Solves sum_c A[r][c] x_c = b_r. Free variables are set to 0, pivot variables
// are the lexicographically earliest possible. Returns nullopt if inconsistent.
std::optional<std::vector<Rational>> solve(const std::vector<SparseRow>& A,
                                           const std::vector<Rational>& b, int ncols);

}  // namespace filiform
