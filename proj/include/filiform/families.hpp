#pragma once

#include "filiform/cochain.hpp"
#include "filiform/rational.hpp"

#include <string>
#include <vector>

namespace filiform {

struct FamilySpec {
    int k = 2;
    int l = 0;
    int max_index = 20;
};

// u[0] = u_2 = a_{2,3}, u[1] = u_3 = a_{3,4}, ...
struct DiagonalParams {
    std::vector<Rational> u;

    Rational get(int m) const {
        int p = m - 2;
        return p >= 0 && p < static_cast<int>(u.size()) ? u[p] : Rational(0);
    }
};

struct Validity {
    bool valid = true;
    std::string reason;
};

// Stable recurrence a_{i,j+1} = a_{i,j} - a_{i+1,j} seeded by a_{i,i+1} = u_i,
// filled column by column from the right; a_{1,*} = 0.
HomCochain recurrence_cochain(const DiagonalParams& p, int l, int max_index);

HomCochain k_family(const FamilySpec& spec, bool allow_contradictory = false);

// Coefficient a_{m-r,k} of the m-family.
Rational closed_form_coeff(int m, int r, int k);

// Coefficient of u_m in a_{i,j} (i < j) from the sum formula.
Rational diagonal_coefficient(int i, int j, int m);

HomCochain from_diagonal(const DiagonalParams& p, int l, int max_index);

Validity validity_check(const FamilySpec& spec);

}  // namespace filiform
