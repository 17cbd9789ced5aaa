#include "filiform/families.hpp"

#include "filiform/error.hpp"

#include <algorithm>
#include <vector>

namespace filiform {

namespace {

// Dense a[i][j] for 2 <= i < j <= M from the stable recurrence.
std::vector<std::vector<Rational>> recurrence_table(const DiagonalParams& p, int M) {
    std::vector<std::vector<Rational>> a(M + 2, std::vector<Rational>(M + 2));
    for (int i = M - 1; i >= 2; --i) {
        a[i][i + 1] = p.get(i);
        for (int j = i + 1; j < M; ++j) a[i][j + 1] = a[i][j] - (j > i + 1 ? a[i + 1][j] : Rational(0));
    }
    return a;
}

}  // namespace

HomCochain recurrence_cochain(const DiagonalParams& p, int l, int max_index) {
    auto a = recurrence_table(p, max_index);
    HomCochain c(2, l, max_index);
    for (int i = 2; i <= max_index; ++i)
        for (int j = i + 1; j <= max_index; ++j)
            if (a[i][j] != 0 && i + j + l >= 1) c.set({i, j}, a[i][j]);
    return c;
}

Validity validity_check(const FamilySpec& spec) {
    if (spec.k < 2) return {false, "family index must be at least 2"};
    const int anti = -spec.l + 1;
    if (anti < 5) return {true, ""};
    DiagonalParams p;
    p.u.assign(spec.k - 1, 0);
    p.u.back() = 1;
    auto a = recurrence_table(p, std::max(anti, spec.k + 2));
    for (int i = 2; 2 * i < anti; ++i) {
        int j = anti - i;
        if (a[i][j] != 0)
            return {false, "antidiagonal-contradiction: a_{" + std::to_string(i) + "," +
                               std::to_string(j) + "} = " + to_string(a[i][j]) +
                               " must vanish in weight " + std::to_string(spec.l)};
    }
    return {true, ""};
}

HomCochain k_family(const FamilySpec& spec, bool allow_contradictory) {
    if (spec.k < 2) throw Error(ErrorCode::InvalidArgument, "family index must be at least 2");
    if (!allow_contradictory) {
        Validity v = validity_check(spec);
        if (!v.valid) throw Error(ErrorCode::ContradictoryFamily, v.reason);
    }
    DiagonalParams p;
    p.u.assign(spec.k - 1, 0);
    p.u.back() = 1;
    return recurrence_cochain(p, spec.l, spec.max_index);
}

Rational closed_form_coeff(int m, int r, int k) {
    if (r < 0 || r > m - 2)
        throw Error(ErrorCode::OutOfRange, "r must lie in [0, m-2]");
    if (k < m + r + 1) return 0;
    Rational v(factorial(k - m - 1), factorial(r) * factorial(k - m - r - 1));
    v.canonicalize();
    return r % 2 ? Rational(-v) : v;
}

Rational diagonal_coefficient(int i, int j, int m) {
    if (m < i || j - 2 * m + i - 1 < 0) return 0;
    Rational v(factorial(j - m - 1), factorial(m - i) * factorial(j - 2 * m + i - 1));
    v.canonicalize();
    return (m - i) % 2 ? Rational(-v) : v;
}

HomCochain from_diagonal(const DiagonalParams& p, int l, int max_index) {
    HomCochain c(2, l, max_index);
    for (int i = 2; i <= max_index; ++i)
        for (int j = i + 1; j <= max_index; ++j) {
            if (i + j + l < 1) continue;
            Rational v;
            for (int m = i; 2 * m <= i + j - 1; ++m) {
                Rational u = p.get(m);
                if (u != 0) v += u * diagonal_coefficient(i, j, m);
            }
            if (v != 0) c.set({i, j}, v);
        }
    return c;
}

}  // namespace filiform
