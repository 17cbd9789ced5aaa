#pragma once

#include "filiform/algebra.hpp"
#include "filiform/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace filiform {

using Index = std::vector<int>;

// Homogeneous cochain c(e_{i1},...,e_{iq}) = c_{i1..iq} e_{i1+...+iq+l}.
// Coefficients are stored for strictly increasing index tuples; a degree 0
// cochain stores its single coefficient (of e_l) under the empty tuple.
class HomCochain {
public:
    HomCochain(int q, int l, int max_index);

    int degree() const { return q_; }
    int weight() const { return l_; }
    int max_index() const { return max_index_; }

    int target(const Index& idx) const;
    bool forbidden(const Index& idx) const { return target(idx) <= 0; }

    // Any index order; the sign of the sorting permutation is applied.
    Rational at(Index idx) const;
    void set(Index idx, const Rational& v);
    void add(Index idx, const Rational& v);

    const std::map<Index, Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    HomCochain& operator+=(const HomCochain& other);
    HomCochain& operator-=(const HomCochain& other);
    HomCochain& operator*=(const Rational& f);
    friend HomCochain operator+(HomCochain a, const HomCochain& b) { return a += b; }
    friend HomCochain operator-(HomCochain a, const HomCochain& b) { return a -= b; }
    friend HomCochain operator*(const Rational& f, HomCochain a) { return a *= f; }

    HomCochain restricted(int max_index) const;

    bool operator==(const HomCochain& other) const {
        return q_ == other.q_ && l_ == other.l_ && max_index_ == other.max_index_ &&
               coeffs_ == other.coeffs_;
    }

private:
    int q_;
    int l_;
    int max_index_;
    std::map<Index, Rational> coeffs_;
};

// Sorts in place, returning the permutation sign, or 0 on a repeated index.
int sort_with_sign(Index& idx);

// m0 large enough for every bracket the differential of c can touch.
GradedAlgebra default_base(const HomCochain& c);

// Coefficient of e_{|T|+l} in (dc)(e_T) as a linear form in the coordinates
// of a q-cochain c of weight l. Forbidden coordinates are left out.
// Convention: dc(x,y) = c([x,y]) - [x,c(y)] + [y,c(x)] in degree 1, and the
// sign-matched extension in every degree (the negated standard differential).
std::map<Index, Rational> differential_form(const GradedAlgebra& base, int q, int l,
                                            const Index& T);

// Single coefficient of dc at T; throws window-error if T is out of window.
Rational coboundary_at(const HomCochain& c, const GradedAlgebra& base, const Index& T);
Rational coboundary_at(const HomCochain& c, const Index& T);
bool in_window(const HomCochain& c, const GradedAlgebra& base, const Index& T);

HomCochain differential(const HomCochain& c, const GradedAlgebra& base);
HomCochain differential(const HomCochain& c);

struct CocycleCheck {
    bool ok = true;
    std::optional<Index> witness;
};
CocycleCheck is_cocycle(const HomCochain& c, const GradedAlgebra& base);
CocycleCheck is_cocycle(const HomCochain& c);

struct CohomologyReport {
    int q = 0;
    int l = 0;
    int N = 0;
    int dim_window = 0;
    bool stable = false;
    int cocycle_dim = 0;
    int coboundary_rank = 0;
};

// Works on the quotient complex of cochains whose argument degrees sum to at
// most N-|l|-2; for q = 1 that is the plain index bound.
CohomologyReport cohomology_dim(int q, int l, int N);
int cohomology_dim_window(int q, int l, int N, int* cocycles = nullptr, int* coboundaries = nullptr);

struct NamedGenerator {
    std::string name;
    int weight = 0;
    HomCochain cochain;
    bool coboundary = false;
};
std::vector<NamedGenerator> h1_generators(int l, int max_index);

// Shuffle composition bracket [a,b] = a o b - (-1)^{(p-1)(q-1)} b o a.
HomCochain nr_bracket(const HomCochain& a, const HomCochain& b);
HomCochain nr_bracket_deg1(const HomCochain& a, const HomCochain& b);

HomCochain reduce_mod_coboundary(const HomCochain& c, const GradedAlgebra& base);
HomCochain reduce_mod_coboundary(const HomCochain& c);

// Exact solve of d(beta) = c on c's window; nullopt if c is not a coboundary.
std::optional<HomCochain> find_primitive(const HomCochain& c, const GradedAlgebra& base);
std::optional<HomCochain> find_primitive(const HomCochain& c);

// Strictly increasing tuples of length n with entries in [lo, hi], lex order.
std::vector<Index> increasing_tuples(int n, int lo, int hi);

}  // namespace filiform
