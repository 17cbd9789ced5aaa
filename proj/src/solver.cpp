#include "filiform/solver.hpp"

#include "filiform/error.hpp"
#include "filiform/linalg.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

namespace filiform {

const char* equation_set_name(EquationSet s) {
    switch (s) {
    case EquationSet::M2rs: return "all";
    case EquationSet::M23k: return "m23k";
    case EquationSet::Full: return "full";
    }
    return "?";
}

EquationSet parse_equation_set(const std::string& s) {
    if (s == "all" || s == "m2rs") return EquationSet::M2rs;
    if (s == "m23k") return EquationSet::M23k;
    if (s == "full") return EquationSet::Full;
    throw Error(ErrorCode::InvalidArgument, "unknown equation set '" + s + "'");
}

int max_variable_at_level(int level, int l) {
    int num = level + l - 1;
    return num >= 0 ? num / 2 : -((1 - num) / 2);
}

namespace {

using Linear = std::map<int, Rational>;

Rational diag_coeff(int i, int j, int m) {
    if (m < i || j - 2 * m + i - 1 < 0) return 0;
    Rational v(factorial(j - m - 1), factorial(m - i) * factorial(j - 2 * m + i - 1));
    v.canonicalize();
    return (m - i) % 2 ? Rational(-v) : v;
}

// a_{i,j} as a linear form in u_2 .. u_last.
Linear linear_form(int i, int j, int l, int last) {
    if (i == j) return {};
    if (i > j) {
        Linear f = linear_form(j, i, l, last);
        for (auto& [m, c] : f) c = -c;
        return f;
    }
    if (i < 2 || i + j + l < 1) return {};
    Linear f;
    for (int m = i; m <= last && 2 * m <= i + j - 1; ++m) {
        Rational c = diag_coeff(i, j, m);
        if (c != 0) f[m] = c;
    }
    return f;
}

void add_product(Quadratic& q, const Linear& x, const Linear& y) {
    for (const auto& [m, a] : x)
        for (const auto& [n, b] : y) {
            auto key = m <= n ? std::make_pair(m, n) : std::make_pair(n, m);
            Rational& slot = q[key];
            slot += a * b;
            if (slot == 0) q.erase(key);
        }
}

int max_var(const Quadratic& q) {
    int v = 0;
    for (const auto& [k, c] : q) v = std::max(v, k.second);
    return v;
}

// Graded reverse lexicographic order with u_2 > u_3 > ...: among degree-2
// monomials the larger one has the smaller exponent in the last variable
// where they differ.
bool grevlex_greater(std::pair<int, int> x, std::pair<int, int> y) {
    std::map<int, int> ex, ey;
    ++ex[x.first], ++ex[x.second], ++ey[y.first], ++ey[y.second];
    int top = std::max(x.second, y.second);
    for (int v = top; v >= 0; --v) {
        int a = ex.count(v) ? ex[v] : 0, b = ey.count(v) ? ey[v] : 0;
        if (a != b) return a < b;
    }
    return false;
}

std::pair<int, int> leading_monomial(const Quadratic& q) {
    auto best = q.begin()->first;
    for (const auto& [k, c] : q)
        if (grevlex_greater(k, best)) best = k;
    return best;
}

void axpy_into(Quadratic& e, const Rational& f, const Quadratic& p) {
    for (const auto& [k, c] : p) {
        Rational& slot = e[k];
        slot += f * c;
        if (slot == 0) e.erase(k);
    }
}

bool in_set(EquationSet set, int i, int j) {
    switch (set) {
    case EquationSet::M2rs: return i == 2;
    case EquationSet::M23k: return i == 2 && j == 3;
    case EquationSet::Full: return true;
    }
    return false;
}

}  // namespace

Quadratic massey_quadratic(int i, int j, int k, int l, int last_var) {
    Quadratic q;
    add_product(q, linear_form(i, j, l, last_var), linear_form(i + j + l, k, l, last_var));
    add_product(q, linear_form(j, k, l, last_var), linear_form(j + k + l, i, l, last_var));
    add_product(q, linear_form(k, i, l, last_var), linear_form(k + i + l, j, l, last_var));
    return q;
}

QuadraticSystem build_system(int l, int V, int level_max, EquationSet set) {
    if (V < 2) throw Error(ErrorCode::InvalidArgument, "need at least two variables");
    if (level_max < 9) throw Error(ErrorCode::InvalidArgument, "level_max must be at least 9");
    QuadraticSystem sys;
    sys.l = l;
    sys.V = V;
    sys.level_max = level_max;
    sys.set = set;
    std::map<std::pair<int, int>, int> column;
    for (int m = 2; m <= V + 1; ++m)
        for (int n = m; n <= V + 1; ++n) column.emplace(std::make_pair(m, n), static_cast<int>(column.size()));
    std::vector<SparseRow> raw_rows;
    std::vector<std::pair<int, Rational>> lead;  // leading monomial column, coefficient
    std::vector<std::pair<int, int>> lead_mono;
    for (int level = 6; level <= level_max; ++level) {
        for (int i = 2; i < level; ++i)
            for (int j = i + 1; j < level; ++j) {
                int k = level - i - j;
                if (k <= j) continue;
                if (!in_set(set, i, j)) continue;
                Quadratic raw = massey_quadratic(i, j, k, l, V + 1);
                if (raw.empty()) continue;
                std::vector<std::pair<int, Rational>> row;
                for (const auto& [key, c] : raw) row.emplace_back(column.at(key), c);
                raw_rows.push_back(make_row(std::move(row)));
                Quadratic e = raw;
                for (size_t p = 0; p < sys.equations.size(); ++p) {
                    auto it = e.find(lead_mono[p]);
                    if (it == e.end()) continue;
                    Rational f = -it->second / lead[p].second;
                    axpy_into(e, f, sys.equations[p].terms);
                }
                if (e.empty()) continue;
                auto lm = leading_monomial(e);
                lead_mono.push_back(lm);
                lead.emplace_back(column.at(lm), e.at(lm));
                sys.equations.push_back({level, {i, j, k}, std::move(e), std::move(raw)});
            }
        sys.rank_by_level[level] = rank(raw_rows, static_cast<int>(column.size()));
    }
    return sys;
}

Rational evaluate(const Quadratic& q, const std::map<int, Rational>& u) {
    Rational v;
    for (const auto& [k, c] : q) {
        auto a = u.find(k.first), b = u.find(k.second);
        if (a == u.end() || b == u.end()) continue;
        v += c * a->second * b->second;
    }
    return v;
}

std::string variable_name(int m) {
    if (m >= 2 && m < 2 + 26) return std::string(1, static_cast<char>('a' + m - 2));
    return "u" + std::to_string(m);
}

std::string render(const Quadratic& q) {
    if (q.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : q) {
        Rational a = abs(c);
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        first = false;
        if (a != 1) os << to_string(a) << '*';
        if (k.first == k.second)
            os << variable_name(k.first) << "^2";
        else
            os << variable_name(k.first) << '*' << variable_name(k.second);
    }
    return os.str();
}

namespace {

struct Node {
    std::map<int, RatFunc> val;
    bool symbolic = false;
    int param = 0;
    int next = 0;
    int chart = 0;
};

struct Substituted {
    RatFunc A, B, C;  // A y^2 + B y + C
};

Substituted substitute(const Quadratic& q, const std::map<int, RatFunc>& val, int y) {
    Substituted s;
    for (const auto& [k, c] : q) {
        auto [m, n] = k;
        RatFunc coeff(c);
        if (m == y && n == y) {
            s.A = s.A + coeff;
        } else if (m == y || n == y) {
            int o = m == y ? n : m;
            s.B = s.B + coeff * val.at(o);
        } else {
            s.C = s.C + coeff * val.at(m) * val.at(n);
        }
    }
    return s;
}

std::optional<Node> specialize(const Node& node, const Rational& t) {
    Node out = node;
    out.symbolic = false;
    for (auto& [m, f] : out.val) {
        auto v = f.at(t);
        if (!v) return std::nullopt;
        f = RatFunc(*v);
    }
    return out;
}

class Search {
public:
    Search(const QuadraticSystem& sys, const SolverConfig& config, SolveResult& out)
        : sys_(sys), config_(config), out_(out) {
        for (const auto& e : sys.equations) top_.push_back(max_var(e.terms));
    }

    void run(Node root) {
        std::vector<Node> stack{std::move(root)};
        while (!stack.empty()) {
            Node n = std::move(stack.back());
            stack.pop_back();
            std::vector<Node> children = step(n);
            for (auto it = children.rbegin(); it != children.rend(); ++it) {
                if (static_cast<int>(stack.size() + found()) >= config_.max_branches) {
                    if (!out_.depth_exceeded)
                        out_.diagnostics.push_back("branch limit " + std::to_string(config_.max_branches) +
                                                   " reached; results are partial");
                    out_.depth_exceeded = true;
                    break;
                }
                stack.push_back(std::move(*it));
            }
        }
    }

private:
    size_t found() const { return out_.branches.size() + out_.curves.size(); }

    std::vector<Node> split_at_roots(const Node& n, const UPoly& p) {
        std::vector<Node> kids;
        RootReport roots = rational_roots(p);
        out_.irrational_candidates += roots.irrational_real;
        for (const auto& r : roots.rational)
            if (auto k = specialize(n, r)) kids.push_back(std::move(*k));
        return kids;
    }

    std::vector<Node> step(Node n) {
        // Equations with every variable assigned are constraints.
        std::vector<RatFunc> constraints;
        for (size_t e = 0; e < sys_.equations.size(); ++e) {
            if (top_[e] >= n.next) continue;
            RatFunc v = substitute(sys_.equations[e].terms, n.val, -1).C;
            if (v.is_zero()) continue;
            if (v.is_constant()) return {};
            constraints.push_back(v);
        }
        if (!constraints.empty()) {
            UPoly g = constraints[0].num();
            for (size_t c = 1; c < constraints.size(); ++c) g = UPoly::gcd(g, constraints[c].num());
            if (g.is_constant()) return {};
            return split_at_roots(n, g);
        }
        if (n.next > sys_.last_var()) {
            emit(n);
            return {};
        }
        int y = n.next;
        std::vector<Substituted> linear, quadratic;
        for (size_t e = 0; e < sys_.equations.size(); ++e) {
            if (top_[e] != y) continue;
            Substituted s = substitute(sys_.equations[e].terms, n.val, y);
            if (s.A.is_zero() && s.B.is_zero()) continue;  // checked as a constraint next step
            (s.A.is_zero() ? linear : quadratic).push_back(std::move(s));
        }
        if (!linear.empty()) {
            const Substituted& s = linear.front();
            std::vector<Node> kids;
            if (!s.B.is_constant()) kids = split_at_roots(n, s.B.num());
            Node k = n;
            k.val[y] = -s.C / s.B;
            k.next = y + 1;
            kids.insert(kids.begin(), std::move(k));
            return kids;
        }
        if (!quadratic.empty()) {
            if (!n.symbolic) {
                const Substituted& s = quadratic.front();
                UPoly p(std::vector<Rational>{s.C.constant(), s.B.constant(), s.A.constant()});
                RootReport roots = rational_roots(p);
                out_.irrational_candidates += roots.irrational_real;
                std::vector<Node> kids;
                for (const auto& r : roots.rational) {
                    Node k = n;
                    k.val[y] = RatFunc(r);
                    k.next = y + 1;
                    kids.push_back(std::move(k));
                }
                return kids;
            }
            for (size_t p = 0; p < quadratic.size(); ++p)
                for (size_t q = p + 1; q < quadratic.size(); ++q) {
                    const auto& [a, b, c] = quadratic[p];
                    const auto& [d, e, f] = quadratic[q];
                    RatFunc x = a * f - c * d;
                    RatFunc res = x * x - (a * e - b * d) * (b * f - c * e);
                    if (res.is_zero()) continue;
                    if (res.is_constant()) return {};
                    return split_at_roots(n, res.num());
                }
            out_.diagnostics.push_back("chart " + variable_name(n.chart) + ": " + variable_name(y) +
                                       " is quadratic over a free parameter; branch not resolved");
            return {};
        }
        if (!n.symbolic) {
            Node k = n;
            k.symbolic = true;
            k.param = y;
            k.val[y] = RatFunc::param();
            k.next = y + 1;
            return {k};
        }
        out_.diagnostics.push_back("chart " + variable_name(n.chart) + ": " + variable_name(y) +
                                   " free alongside " + variable_name(n.param) + "; branch not resolved");
        return {};
    }

    void emit(const Node& n) {
        if (n.symbolic) {
            CurveBranch c;
            c.l = sys_.l;
            c.assignments = n.val;
            c.normalization = n.chart;
            c.parameter = n.param;
            c.verified_level = sys_.level_max;
            out_.curves.push_back(std::move(c));
            return;
        }
        SolutionBranch b;
        b.l = sys_.l;
        b.set = sys_.set;
        for (const auto& [m, f] : n.val) b.assignments[m] = f.constant();
        b.normalization = n.chart;
        for (const auto& e : sys_.equations)
            if (evaluate(e.terms, b.assignments) != 0)
                throw Error(ErrorCode::InvalidArgument, "solver produced a non-solution");
        b.verified_level = sys_.level_max;
        out_.branches.push_back(std::move(b));
    }

    const QuadraticSystem& sys_;
    const SolverConfig& config_;
    SolveResult& out_;
    std::vector<int> top_;
};

bool chart_unconstrained(const QuadraticSystem& sys, int p) {
    for (const auto& e : sys.equations)
        for (const auto& [k, c] : e.terms)
            if (k.first >= p) return false;
    return true;
}

std::vector<Rational> as_vector(const SolutionBranch& b) {
    std::vector<Rational> v;
    for (const auto& [m, x] : b.assignments) v.push_back(x);
    return v;
}

void sort_result(SolveResult& r) {
    std::sort(r.branches.begin(), r.branches.end(), [](const auto& x, const auto& y) {
        if (x.normalization != y.normalization) return x.normalization < y.normalization;
        return as_vector(x) < as_vector(y);
    });
    r.branches.erase(std::unique(r.branches.begin(), r.branches.end(),
                                 [](const auto& x, const auto& y) { return x.assignments == y.assignments; }),
                     r.branches.end());
}

}  // namespace

SolveResult solve_projective(const QuadraticSystem& system, const SolverConfig& config) {
    if (system.equations.empty()) throw Error(ErrorCode::InvalidArgument, "empty system");
    SolveResult result;
    Search search(system, config, result);
    for (int p = system.first_var(); p <= system.last_var(); ++p) {
        if (chart_unconstrained(system, p)) {
            result.unconstrained_charts.push_back(p);
            continue;
        }
        Node root;
        root.chart = p;
        for (int m = system.first_var(); m < p; ++m) root.val[m] = RatFunc();
        root.val[p] = RatFunc(Rational(1));
        root.next = p + 1;
        search.run(std::move(root));
    }
    sort_result(result);
    return result;
}

ExtendResult extend_check(const SolutionBranch& branch, int next_levels, const SolverConfig& config) {
    if (next_levels < 0) throw Error(ErrorCode::InvalidArgument, "negative level count");
    ExtendResult out;
    int level = branch.verified_level + next_levels;
    int old_last = branch.assignments.empty() ? 1 : branch.assignments.rbegin()->first;
    int last = std::max(old_last, max_variable_at_level(level, branch.l));
    QuadraticSystem sys = build_system(branch.l, last - 1, level, branch.set);
    SolveResult res;
    Search search(sys, config, res);
    Node root;
    root.chart = branch.normalization;
    for (const auto& [m, v] : branch.assignments) root.val[m] = RatFunc(v);
    root.next = old_last + 1;
    search.run(std::move(root));
    out.diagnostics = res.diagnostics;
    for (const auto& c : res.curves) {
        // The top variable is not yet pinned by the levels checked.
        for (long t = 0;; ++t) {
            SolutionBranch b;
            b.l = c.l;
            b.set = branch.set;
            b.normalization = c.normalization;
            b.verified_level = level;
            bool ok = true;
            for (const auto& [m, f] : c.assignments) {
                auto v = f.at(Rational(t));
                if (!v) ok = false;
                else b.assignments[m] = *v;
            }
            if (!ok) continue;
            out.diagnostics.push_back(variable_name(c.parameter) + " is free at level " + std::to_string(level) +
                                      "; set to " + std::to_string(t));
            res.branches.push_back(std::move(b));
            break;
        }
    }
    sort_result(res);
    if (res.branches.empty()) return out;
    if (res.branches.size() > 1)
        out.diagnostics.push_back(std::to_string(res.branches.size()) + " continuations; reporting the first");
    out.survives = true;
    out.extended = res.branches.front();
    return out;
}

namespace {

int jacobian_rank(const QuadraticSystem& sys, const std::map<int, Rational>& u) {
    std::vector<SparseRow> rows;
    for (const auto& e : sys.equations) {
        std::map<int, Rational> grad;
        for (const auto& [k, c] : e.terms) {
            auto [m, n] = k;
            grad[m - 2] += c * u.at(n);
            grad[n - 2] += c * u.at(m);
        }
        std::vector<std::pair<int, Rational>> row(grad.begin(), grad.end());
        rows.push_back(make_row(std::move(row)));
    }
    return rank(rows, sys.V);
}

}  // namespace

DimensionReport dimension_probe(int l, int V, int level_max, EquationSet set, const SolverConfig& config) {
    QuadraticSystem sys = build_system(l, V, level_max, set);
    SolveResult res = solve_projective(sys, config);
    DimensionReport rep;
    // V - rank bounds the local dimension of the affine cone from above; it is
    // exact at smooth points. The solver certifies points (1) and curves (2).
    for (const auto& b : res.branches) {
        int bound = V - jacobian_rank(sys, b.assignments);
        rep.jacobian_bound.push_back(bound);
        rep.per_branch.push_back(std::min(bound, 1));
    }
    for (const auto& c : res.curves) {
        int bound = V;
        for (int t = 1; t <= 8; ++t) {
            std::map<int, Rational> u;
            bool ok = true;
            for (const auto& [m, f] : c.assignments) {
                auto v = f.at(Rational(t, 7));
                if (!v) ok = false;
                else u[m] = *v;
            }
            if (ok) bound = std::min(bound, V - jacobian_rank(sys, u));
        }
        rep.jacobian_bound.push_back(bound);
        rep.per_branch.push_back(std::min(bound, 2));
    }
    for (int d : rep.per_branch) rep.dimension = std::max(rep.dimension, d);
    return rep;
}

}  // namespace filiform
