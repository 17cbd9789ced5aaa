#include "filiform/deformation.hpp"

#include "filiform/error.hpp"
#include "filiform/families.hpp"
#include "filiform/linalg.hpp"

#include <algorithm>
#include <set>

namespace filiform {

namespace {

std::set<int> tags_for(const DeformationSpec& spec) {
    std::set<int> w = spec.base.weights();
    if (w.empty()) w.insert(0);
    w.insert(spec.cocycle.weight());
    if (spec.quadratic) w.insert(spec.quadratic->weight());
    return w;
}

void require_cover(const HomCochain& c, int N, const char* what) {
    if (c.degree() != 2) throw Error(ErrorCode::UnsupportedDegree, std::string(what) + " must be a 2-cochain");
    int need = std::min(N, N - 1 - c.weight());
    if (c.max_index() < need)
        throw Error(ErrorCode::WindowError, std::string(what) + " covers indices up to " +
                                                std::to_string(c.max_index()) + ", need " +
                                                std::to_string(need));
}

GradedAlgebra cochain_part(const HomCochain& c, int N, const std::set<int>& tags) {
    GradedAlgebra A(N, {}, tags);
    int top = std::min(N, c.max_index());
    for (const auto& [idx, v] : c.coeffs()) {
        if (idx[1] > top) continue;
        int k = idx[0] + idx[1] + c.weight();
        if (k >= 1 && k <= N) A.set_bracket(idx[0], idx[1], k, v);
    }
    return A;
}

std::array<GradedAlgebra, 3> components(const DeformationSpec& spec) {
    const int N = spec.base.N();
    require_cover(spec.cocycle, N, "cocycle");
    if (spec.quadratic) require_cover(*spec.quadratic, N, "quadratic term");
    auto tags = tags_for(spec);
    GradedAlgebra b0(N, spec.base.name(), tags);
    for (const auto& [ij, vec] : spec.base.table())
        for (const auto& [k, c] : vec) b0.set_bracket(ij.first, ij.second, k, c);
    GradedAlgebra b2(N, {}, tags);
    if (spec.quadratic) b2 = cochain_part(*spec.quadratic, N, tags);
    return {b0, cochain_part(spec.cocycle, N, tags), b2};
}

// sum over cyclic permutations of [[x,y]_A, z]_B
DegreeVec mixed(const GradedAlgebra& A, const GradedAlgebra& B, int i, int j, int k) {
    DegreeVec out;
    for (auto [x, y, z] : {Triple{i, j, k}, Triple{j, k, i}, Triple{k, i, j}})
        for (const auto& [d, c] : A.bracket(x, y))
            if (d != z) add_scaled(out, B.bracket(d, z), c);
    return out;
}

}  // namespace

DeformationSpec make_spec(HomCochain cocycle, int N, Rational t) {
    return {make_m0(N), std::move(cocycle), std::nullopt, std::move(t)};
}

GradedAlgebra deform(const DeformationSpec& spec) {
    auto parts = components(spec);
    GradedAlgebra out = parts[0];
    out.set_name(spec.base.name() + "(t)");
    Rational tp = spec.t;
    for (int p = 1; p <= 2; ++p, tp *= spec.t)
        for (const auto& [ij, vec] : parts[p].table())
            for (const auto& [k, c] : vec) out.add_bracket(ij.first, ij.second, k, tp * c);
    return out;
}

DeformationCheck is_true_deformation(const DeformationSpec& spec, int window) {
    auto parts = components(spec);
    DeformationCheck out;
    const int W = std::min(window, spec.base.N());
    for (const auto& T : increasing_tuples(3, 1, W)) {
        if (!jacobi_in_window(parts[0], T[0], T[1], T[2])) continue;
        ++out.triples_checked;
        for (int p = 0; p <= 4; ++p) {
            DegreeVec defect;
            for (int a = 0; a <= 2; ++a) {
                int b = p - a;
                if (b < 0 || b > 2) continue;
                add_scaled(defect, mixed(parts[a], parts[b], T[0], T[1], T[2]), 1);
            }
            if (!defect.empty()) {
                out.ok = false;
                out.witness = Triple{T[0], T[1], T[2]};
                out.power = p;
                return out;
            }
        }
    }
    return out;
}

bool jacobi_holds_at(const DeformationSpec& spec, const Rational& t, int window) {
    DeformationSpec s = spec;
    s.t = t;
    GradedAlgebra A = deform(s);
    const int W = std::min(window, A.N());
    for (const auto& T : increasing_tuples(3, 1, W))
        if (jacobi_in_window(A, T[0], T[1], T[2]) && !jacobi_defect(A, T[0], T[1], T[2]).empty())
            return false;
    return true;
}

CompensationResult with_compensation(DeformationSpec spec, int window) {
    CompensationResult out{spec, is_true_deformation(spec, window), {}, false, {}};
    out.final = out.linear;
    if (out.linear.ok || spec.quadratic || out.linear.power != 2) return out;
    std::optional<HomCochain> alpha;
    try {
        alpha = try_compensate(spec.cocycle, spec.base.N() - 1);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::Obstructed) throw;
        out.note = e.what();
        return out;
    }
    if (!alpha) {
        out.note = "Massey square is not a coboundary on the window";
        return out;
    }
    CubeInput cube = make_cube_input(spec.cocycle, *alpha, spec.base.N() - 1);
    auto cubes = all_cubes_zero(cube, window);
    if (!cubes.ok) {
        auto w = *cubes.witness;
        out.note = "Massey cube N(" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "," +
                   std::to_string(w[2]) + ") is nonzero";
        return out;
    }
    spec.quadratic = Rational(-1) * *alpha;
    out.spec = spec;
    out.final = is_true_deformation(spec, window);
    out.compensated = true;
    return out;
}

BasisRescale l1_basis(int N) {
    BasisRescale s;
    s.scale[1] = 1;
    for (int i = 2; i <= N; ++i) s.scale[i] = Rational(1, factorial(i - 2));
    return s;
}

HomCochain l1_target_cocycle(int max_index) {
    HomCochain b(2, 0, max_index);
    for (int i = 2; i <= max_index; ++i)
        for (int j = i + 1; j <= max_index; ++j) b.set({i, j}, j - i);
    return b;
}

HomCochain l1_target_cocycle_standard(int max_index) {
    // [e~_i,e~_j] += (j-i) e~_{i+j} with e~_i = e_i/(i-2)!
    HomCochain a(2, 0, max_index);
    for (int i = 2; i <= max_index; ++i)
        for (int j = i + 1; j <= max_index; ++j) {
            Rational v(Integer((j - i) * factorial(i - 2) * factorial(j - 2)), factorial(i + j - 2));
            v.canonicalize();
            a.set({i, j}, v);
        }
    return a;
}

std::array<WeightZeroTarget, 2> weight_zero_targets(int N) {
    if (N < 10) throw Error(ErrorCode::InvalidTruncation, "weight-zero targets need N >= 10");
    WeightZeroTarget m2{"m2", make_spec(k_family({2, 0, N}), N), make_m2(N)};
    GradedAlgebra base = rescale(make_m0(N), l1_basis(N));
    WeightZeroTarget l1{"L1", {base, l1_target_cocycle(N), std::nullopt, 1}, make_L1(N)};
    return {m2, l1};
}

SuppressedWitt l1_suppressed(int m, int N) {
    if (m < 2) throw Error(ErrorCode::InvalidArgument, "suppression count must be at least 2");
    if (N < 2 * m + 4) throw Error(ErrorCode::InvalidTruncation, "N must be at least 2m+4");
    // g indices up to G cover every pair (i,j) with i,j <= N.
    const int G = 2 * N + m;
    const int T = G + m - 1;
    GradedAlgebra L = make_L1(T);
    auto to_e = [m](int k) { return k == 1 ? 1 : k + m - 1; };
    auto to_g = [m](int e) { return e == 1 ? 1 : e - m + 1; };
    std::vector<Rational> c(G + 1);
    c[1] = 1;
    for (int k = 2; k <= G; ++k) {
        Rational v(factorial(k + m - 3), factorial(m - 1));
        v.canonicalize();
        c[k] = v;
    }
    SuppressedWitt out{m, N, GradedAlgebra(N, "L1{" + std::to_string(m) + "}", {0, m - 1}),
                       HomCochain(2, m - 1, N)};
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) {
            int ei = to_e(i), ej = to_e(j);
            if (ei + ej > T) throw Error(ErrorCode::WindowError, "source truncation too small");
            for (const auto& [e, v] : L.bracket(ei, ej)) {
                if (e != 1 && e < m + 1)
                    throw Error(ErrorCode::InvalidArgument, "suppressed span is not a subalgebra");
                int k = to_g(e);
                Rational w = v * c[i] * c[j] / c[k];
                int weight = k - i - j;
                if (weight == 0) {
                    if (!(i == 1 && w == 1))
                        throw Error(ErrorCode::InvalidArgument, "weight-zero part differs from m0");
                } else if (weight != m - 1) {
                    throw Error(ErrorCode::InvalidArgument, "unexpected weight in suppressed algebra");
                } else {
                    out.extracted_cocycle.set({i, j}, w);
                }
                if (k <= N) out.algebra.set_bracket(i, j, k, w);
            }
        }
    return out;
}

HomCochain a1_literal(int m, int max_index) {
    HomCochain c(2, -m, max_index);
    c.set({1, m}, 1);
    return c;
}

HomCochain a1_completion(int m, int max_index) { return a1_completion(m, m, max_index); }

HomCochain a1_completion(int m, int j1, int max_index) {
    if (m < 2) throw Error(ErrorCode::InvalidArgument, "a_{1,m} direction needs m >= 2");
    const int l = -m;
    HomCochain shape(2, l, max_index);
    GradedAlgebra base = default_base(shape);
    std::map<Index, int> col;
    std::map<Index, Rational> fixed;
    for (const auto& idx : increasing_tuples(2, 1, max_index)) {
        if (shape.forbidden(idx)) continue;
        if (idx[0] == 1)
            fixed[idx] = idx[1] == j1 ? 1 : 0;
        else if (idx[1] == idx[0] + 1)
            fixed[idx] = 0;
        else
            col.emplace(idx, static_cast<int>(col.size()));
    }
    std::vector<SparseRow> A;
    std::vector<Rational> b;
    for (const auto& T : increasing_tuples(3, 1, max_index)) {
        if (T[0] + T[1] + T[2] + l < 1 || !in_window(shape, base, T)) continue;
        std::vector<std::pair<int, Rational>> row;
        Rational rhs;
        for (const auto& [idx, v] : differential_form(base, 2, l, T)) {
            auto f = fixed.find(idx);
            if (f != fixed.end())
                rhs -= v * f->second;
            else
                row.emplace_back(col.at(idx), v);
        }
        A.push_back(make_row(std::move(row)));
        b.push_back(rhs);
    }
    auto x = solve(A, b, static_cast<int>(col.size()));
    if (!x) throw Error(ErrorCode::NotACocycle, "no cocycle extends a_{1," + std::to_string(m) + "} = 1");
    HomCochain out(2, l, max_index);
    out.set({1, j1}, 1);
    for (const auto& [idx, c] : col) out.set(idx, (*x)[c]);
    return out;
}

HomCochain a1_direction(int m, int max_index, int window) {
    const int l = -m;
    HomCochain A = a1_completion(m, max_index);
    HomCochain F = k_family({m, l, max_index});
    std::vector<HomCochain> R;
    for (int k = 2; k < max_index; ++k) {
        DiagonalParams p;
        p.u.assign(max_index, 0);
        p.u[k - 2] = 1;
        HomCochain r = recurrence_cochain(p, l, max_index);
        if (is_cocycle(r).ok) R.push_back(std::move(r));
    }
    // Cross term of the squares of F and X, which is linear in X.
    auto cross = [&F](const HomCochain& X, int i, int j, int k) -> Rational {
        return massey_square(F + X, i, j, k) - massey_square(F, i, j, k) - massey_square(X, i, j, k);
    };
    std::vector<SparseRow> rows;
    std::vector<Rational> rhs;
    HomCochain probe = F + A;
    for (const auto& T : increasing_tuples(3, 2, window)) {
        if (compensable(T[0], T[1], T[2], l) || !square_in_window(probe, T[0], T[1], T[2])) continue;
        std::vector<std::pair<int, Rational>> row;
        for (size_t k = 0; k < R.size(); ++k) {
            if (!square_in_window(F + R[k], T[0], T[1], T[2])) continue;
            Rational v = cross(R[k], T[0], T[1], T[2]);
            if (v != 0) row.emplace_back(static_cast<int>(k), v);
        }
        rows.push_back(make_row(std::move(row)));
        rhs.push_back(-cross(A, T[0], T[1], T[2]));
    }
    auto x = solve(rows, rhs, static_cast<int>(R.size()));
    if (!x) throw Error(ErrorCode::Obstructed, "no seed correction makes a_{1," + std::to_string(m) + "} compatible");
    for (size_t k = 0; k < R.size(); ++k)
        if ((*x)[k] != 0) A += (*x)[k] * R[k];
    return A;
}

namespace {

std::string triple_name(const Triple& t) {
    return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

CatalogueMember examine(std::string name, HomCochain c, int window, bool allow_compensation) {
    CatalogueMember m{std::move(name), std::move(c), false, false, false, false, false, {}, {}, {}};
    auto cc = is_cocycle(m.cochain);
    m.cocycle = cc.ok;
    m.cocycle_witness = cc.witness;
    auto sq = all_squares_zero(m.cochain, window);
    m.square_zero = sq.ok;
    m.square_witness = sq.witness;
    if (!m.cocycle) {
        m.note = "not a cocycle";
        return m;
    }
    m.coboundary = find_primitive(m.cochain).has_value();
    if (m.square_zero) {
        m.true_deformation = true;
        return m;
    }
    if (!allow_compensation) {
        m.note = "nonzero Massey square " + triple_name(*sq.witness);
        return m;
    }
    const int N = m.cochain.max_index();
    auto comp = with_compensation(make_spec(m.cochain, N), window);
    m.compensated = comp.compensated;
    m.true_deformation = comp.final.ok;
    if (comp.compensated && comp.final.ok)
        m.note = "true with the quadratic correction";
    else if (!comp.note.empty())
        m.note = comp.note;
    else
        m.note = "nonzero Massey square " + triple_name(*sq.witness);
    return m;
}

int span_rank(const std::vector<HomCochain>& classes) {
    if (classes.empty()) return 0;
    std::map<Index, int> col;
    for (const auto& c : classes)
        for (const auto& [idx, v] : c.coeffs()) col.emplace(idx, 0);
    int n = 0;
    for (auto& [idx, k] : col) k = n++;
    std::vector<SparseRow> rows;
    for (const auto& c : classes) {
        std::vector<std::pair<int, Rational>> row;
        for (const auto& [idx, v] : c.coeffs()) row.emplace_back(col.at(idx), v);
        rows.push_back(make_row(std::move(row)));
    }
    return rank(rows, n);
}

int cohomology_rank(const std::vector<CatalogueMember>& members) {
    std::vector<HomCochain> classes;
    for (const auto& m : members)
        if (m.true_deformation) classes.push_back(reduce_mod_coboundary(m.cochain));
    return span_rank(classes);
}

int cochain_rank(const std::vector<CatalogueMember>& members) {
    std::vector<HomCochain> vs;
    for (const auto& m : members)
        if (m.true_deformation && !m.coboundary) vs.push_back(m.cochain);
    return span_rank(vs);
}

std::string branch_name(const SolutionBranch& b) {
    std::string s = "branch(";
    bool first = true;
    for (const auto& [m, v] : b.assignments) {
        s += (first ? "" : ",") + to_string(v);
        first = false;
    }
    return s + ")";
}

}  // namespace

DeformationCount count_true_deformations(int l, const CountConfig& config) {
    if (l < -8 || l > 8) throw Error(ErrorCode::OutOfRange, "weight must lie in [-8, 8]");
    DeformationCount out;
    out.l = l;
    const int M = config.max_index;
    const int W = config.window;
    if (l <= -2) {
        const int m = -l;
        out.expected = l == -2 ? 3 : 2;
        out.members.push_back(examine(std::to_string(m) + "-family", k_family({m, l, M}), W, false));
        if (l == -2) out.members.push_back(examine("3-family", k_family({3, l, M}), W, true));
        out.members.push_back(examine("a1," + std::to_string(m) + " direction", a1_direction(m, M, W), W, true));
        auto lit = examine("a1," + std::to_string(m) + " literal", a1_literal(m, M), W, false);
        HomCochain mixed = out.members.front().cochain + lit.cochain;
        auto sq = all_squares_zero(mixed, W);
        lit.note += sq.ok ? "; squares of the m-family plus it vanish"
                          : "; squares of the m-family plus it fail at " + triple_name(*sq.witness);
        out.members.push_back(std::move(lit));
    } else if (l == -1) {
        out.expected = 0;
        out.members.push_back(examine("2-family", k_family({2, l, M}), W, false));
        out.members.push_back(examine("3-family", k_family({3, l, M}), W, false));
    } else if (l == 0) {
        out.expected = 2;
        out.members.push_back(examine("2-family", k_family({2, 0, M}), W, false));
        out.members.push_back(examine("L1 target", l1_target_cocycle_standard(M), W, false));
    } else {
        if (l == 1) out.expected = 2;
        else out.notes.push_back("at least two true deformations; completeness is open");
        out.members.push_back(examine("2-family", k_family({2, l, M}), W, false));
        auto lm = l1_suppressed(l + 1, M);
        out.members.push_back(examine("L1{" + std::to_string(l + 1) + "}", lm.extracted_cocycle, W, false));
        if (l == 1) {
            QuadraticSystem sys = build_system(l, config.vars, config.level_max);
            SolveResult res = solve_projective(sys, config.solver);
            for (const auto& b : res.branches) {
                auto ext = extend_check(b, config.extend_levels, config.solver);
                std::string note = branch_name(b);
                if (!ext.survives) {
                    out.notes.push_back(note + " fails within " + std::to_string(config.extend_levels) +
                                        " further levels");
                    continue;
                }
                note += " survives " + std::to_string(config.extend_levels) + " further levels";
                const auto& u = ext.extended.assignments;
                for (const auto& member : out.members) {
                    Rational base = member.cochain.at({2, 3});
                    if (base == 0 || u.at(2) == 0) continue;
                    bool same = true;
                    for (const auto& [k, v] : u)
                        if (k < member.cochain.max_index() && member.cochain.at({k, k + 1}) / base != v / u.at(2))
                            same = false;
                    if (same) note += "; proportional to " + member.name;
                }
                if (u.at(2) == 0) note += "; no a_{2,3} term";
                out.notes.push_back(note);
            }
        }
    }
    out.dimension = cochain_rank(out.members);
    out.cohomology_rank = cohomology_rank(out.members);
    return out;
}

}  // namespace filiform
