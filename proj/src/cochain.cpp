#include "filiform/cochain.hpp"

#include "filiform/error.hpp"
#include "filiform/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

namespace filiform {

using Form = std::map<Index, Rational>;

int sort_with_sign(Index& idx) {
    int sign = 1;
    for (size_t a = 1; a < idx.size(); ++a)
        for (size_t b = a; b > 0 && idx[b - 1] >= idx[b]; --b) {
            if (idx[b - 1] == idx[b]) return 0;
            std::swap(idx[b - 1], idx[b]);
            sign = -sign;
        }
    return sign;
}

HomCochain::HomCochain(int q, int l, int max_index) : q_(q), l_(l), max_index_(max_index) {
    if (q < 0 || q > 3) throw Error(ErrorCode::UnsupportedDegree, "cochain degree must be 0..3");
    if (max_index < 1) throw Error(ErrorCode::InvalidArgument, "max_index must be positive");
}

int HomCochain::target(const Index& idx) const {
    return std::accumulate(idx.begin(), idx.end(), 0) + l_;
}

namespace {

void check_shape(const HomCochain& c, const Index& idx) {
    if (static_cast<int>(idx.size()) != c.degree())
        throw Error(ErrorCode::InvalidArgument, "index tuple has the wrong length");
    for (int i : idx) {
        if (i < 1) throw Error(ErrorCode::InvalidArgument, "indices start at 1");
        if (i > c.max_index())
            throw Error(ErrorCode::WindowError,
                        "index " + std::to_string(i) + " beyond max_index " +
                            std::to_string(c.max_index()));
    }
}

}  // namespace

Rational HomCochain::at(Index idx) const {
    check_shape(*this, idx);
    int s = sort_with_sign(idx);
    if (s == 0) return 0;
    auto it = coeffs_.find(idx);
    if (it == coeffs_.end()) return 0;
    return s > 0 ? it->second : Rational(-it->second);
}

void HomCochain::set(Index idx, const Rational& v) {
    check_shape(*this, idx);
    int s = sort_with_sign(idx);
    if (s == 0) {
        if (v != 0) throw Error(ErrorCode::InvalidArgument, "repeated index with nonzero value");
        return;
    }
    if (v == 0) {
        coeffs_.erase(idx);
        return;
    }
    if (forbidden(idx))
        throw Error(ErrorCode::InvalidArgument, "coefficient with target degree <= 0");
    coeffs_[idx] = s > 0 ? v : Rational(-v);
}

void HomCochain::add(Index idx, const Rational& v) {
    Rational cur = at(idx);
    set(std::move(idx), cur + v);
}

HomCochain& HomCochain::operator+=(const HomCochain& other) {
    if (q_ != other.q_ || l_ != other.l_)
        throw Error(ErrorCode::InvalidArgument, "adding cochains of different type");
    max_index_ = std::min(max_index_, other.max_index_);
    std::map<Index, Rational> sum;
    for (const std::map<Index, Rational>* src : std::initializer_list<const std::map<Index, Rational>*>{&coeffs_, &other.coeffs_})
        for (const auto& [k, v] : *src)
            if (k.empty() || k.back() <= max_index_) sum[k] += v;
    std::erase_if(sum, [](const auto& kv) { return kv.second == 0; });
    coeffs_ = std::move(sum);
    return *this;
}

HomCochain& HomCochain::operator-=(const HomCochain& other) {
    HomCochain neg = other;
    neg *= -1;
    return *this += neg;
}

HomCochain& HomCochain::operator*=(const Rational& f) {
    if (f == 0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [k, v] : coeffs_) v *= f;
    return *this;
}

HomCochain HomCochain::restricted(int max_index) const {
    HomCochain out(q_, l_, max_index);
    for (const auto& [k, v] : coeffs_)
        if (k.empty() || k.back() <= max_index) out.coeffs_[k] = v;
    return out;
}

std::vector<Index> increasing_tuples(int n, int lo, int hi) {
    std::vector<Index> out;
    Index cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= hi - (n - 1 - static_cast<int>(cur.size())); ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(lo);
    return out;
}

namespace {

// Increasing n-tuples of positive integers with sum <= S, lex order.
std::vector<Index> tuples_with_sum(int n, int S) {
    std::vector<Index> out;
    Index cur;
    std::function<void(int, int)> rec = [&](int start, int budget) {
        int left = n - static_cast<int>(cur.size());
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int v = start;; ++v) {
            // smallest completion: v, v+1, ..., v+left-1
            if (left * v + left * (left - 1) / 2 > budget) break;
            cur.push_back(v);
            rec(v + 1, budget - v);
            cur.pop_back();
        }
    };
    rec(1, S);
    return out;
}

// Increasing n-tuples whose largest entry is exactly m.
std::vector<Index> tuples_ending_at(int n, int m) {
    if (n == 0) return {};
    std::vector<Index> out = increasing_tuples(n - 1, 1, m - 1);
    if (n == 1) out = {Index{}};
    for (auto& t : out) t.push_back(m);
    return out;
}

int sum_of(const Index& T) { return std::accumulate(T.begin(), T.end(), 0); }

Rational degree_coeff(const DegreeVec& v, int k, int expected) {
    Rational out;
    for (const auto& [d, c] : v) {
        if (d != expected)
            throw Error(ErrorCode::InvalidArgument, "base algebra is not homogeneous of weight 0");
        if (d == k) out = c;
    }
    return out;
}

std::optional<Form> try_form(const GradedAlgebra& base, int q, int l, const Index& T) {
    const int n = static_cast<int>(T.size());
    if (n != q + 1) throw Error(ErrorCode::InvalidArgument, "tuple length must be q+1");
    const int total = sum_of(T);
    const int tgt = total + l;
    Form form;
    if (tgt < 1) return form;
    auto bump = [&](Index idx, const Rational& v) {
        int s = sort_with_sign(idx);
        if (s == 0 || v == 0) return;
        if (sum_of(idx) + l < 1) return;
        Rational& slot = form[idx];
        slot += s * v;
        if (slot == 0) form.erase(idx);
    };
    // -(-1)^i [x_i, c(rest)]
    for (int i = 0; i < n; ++i) {
        Index rest;
        for (int a = 0; a < n; ++a)
            if (a != i) rest.push_back(T[a]);
        int d = total - T[i] + l;
        if (d < 1) continue;
        if (!base.defined(T[i], d)) return std::nullopt;
        Rational bc = degree_coeff(base.bracket(T[i], d), tgt, T[i] + d);
        if (bc == 0) continue;
        bump(rest, (i % 2 ? 1 : -1) * bc);
    }
    // -(-1)^{i+j} c([x_i,x_j], rest)
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (!base.defined(T[i], T[j])) return std::nullopt;
            DegreeVec br = base.bracket(T[i], T[j]);
            Rational bc = degree_coeff(br, T[i] + T[j], T[i] + T[j]);
            if (bc == 0) continue;
            Index idx{T[i] + T[j]};
            for (int a = 0; a < n; ++a)
                if (a != i && a != j) idx.push_back(T[a]);
            bump(idx, ((i + j) % 2 ? 1 : -1) * bc);
        }
    return form;
}

bool form_fits(const Form& form, int max_index) {
    for (const auto& [idx, v] : form)
        for (int x : idx)
            if (x > max_index) return false;
    return true;
}

std::optional<Rational> try_eval(const HomCochain& c, const GradedAlgebra& base, const Index& T) {
    auto form = try_form(base, c.degree(), c.weight(), T);
    if (!form || (c.degree() > 0 && !form_fits(*form, c.max_index()))) return std::nullopt;
    Rational v;
    for (const auto& [idx, f] : *form) v += f * c.at(idx);
    return v;
}

}  // namespace

std::map<Index, Rational> differential_form(const GradedAlgebra& base, int q, int l,
                                            const Index& T) {
    auto form = try_form(base, q, l, T);
    if (!form) throw Error(ErrorCode::WindowError, "bracket outside the base window");
    return *form;
}

GradedAlgebra default_base(const HomCochain& c) {
    int N = (c.degree() + 1) * c.max_index() + std::abs(c.weight()) + 2;
    return make_m0(std::max(N, 3));
}

bool in_window(const HomCochain& c, const GradedAlgebra& base, const Index& T) {
    for (int x : T)
        if (x < 1 || x > c.max_index()) return false;
    return try_eval(c, base, T).has_value();
}

Rational coboundary_at(const HomCochain& c, const GradedAlgebra& base, const Index& T) {
    for (int x : T)
        if (x < 1 || x > c.max_index())
            throw Error(ErrorCode::WindowError, "tuple index beyond max_index");
    auto v = try_eval(c, base, T);
    if (!v) throw Error(ErrorCode::WindowError, "tuple outside the safe window");
    return *v;
}

Rational coboundary_at(const HomCochain& c, const Index& T) {
    return coboundary_at(c, default_base(c), T);
}

HomCochain differential(const HomCochain& c, const GradedAlgebra& base) {
    if (c.degree() >= 3) throw Error(ErrorCode::UnsupportedDegree, "differential of a 3-cochain");
    const int n = c.degree() + 1;
    int out_max = 0;
    std::vector<std::pair<Index, Rational>> values;
    for (int m = 1; m <= c.max_index(); ++m) {
        std::vector<std::pair<Index, Rational>> layer;
        bool ok = true;
        for (const auto& T : tuples_ending_at(n, m)) {
            auto v = try_eval(c, base, T);
            if (!v) {
                ok = false;
                break;
            }
            if (*v != 0) layer.emplace_back(T, *v);
        }
        if (!ok) break;
        out_max = m;
        for (auto& e : layer) values.push_back(std::move(e));
    }
    if (out_max < 1) throw Error(ErrorCode::WindowError, "no safe window for the differential");
    HomCochain out(n, c.weight(), out_max);
    for (const auto& [T, v] : values) out.set(T, v);
    return out;
}

HomCochain differential(const HomCochain& c) { return differential(c, default_base(c)); }

CocycleCheck is_cocycle(const HomCochain& c, const GradedAlgebra& base) {
    const int n = c.degree() + 1;
    for (const auto& T : increasing_tuples(n, 1, c.max_index())) {
        if (sum_of(T) + c.weight() < 1) continue;
        auto v = try_eval(c, base, T);
        if (v && *v != 0) return {false, T};
    }
    return {true, std::nullopt};
}

CocycleCheck is_cocycle(const HomCochain& c) { return is_cocycle(c, default_base(c)); }

int cohomology_dim_window(int q, int l, int N, int* cocycles, int* coboundaries) {
    if (q < 1 || q > 2) throw Error(ErrorCode::UnsupportedDegree, "cohomology for q in {1,2}");
    if (N < std::max(10, 3 * std::abs(l) + 10))
        throw Error(ErrorCode::InvalidTruncation,
                    "N=" + std::to_string(N) + " too small for weight " + std::to_string(l));
    const int S = N - std::abs(l) - 2;
    GradedAlgebra base = make_m0(N);

    std::map<Index, int> cols;
    for (const auto& T : tuples_with_sum(q, S))
        if (sum_of(T) + l >= 1) cols.emplace(T, static_cast<int>(cols.size()));

    std::vector<SparseRow> eqs;
    for (const auto& T : tuples_with_sum(q + 1, S)) {
        if (sum_of(T) + l < 1) continue;
        std::vector<std::pair<int, Rational>> entries;
        for (const auto& [idx, v] : differential_form(base, q, l, T))
            entries.emplace_back(cols.at(idx), v);
        if (!entries.empty()) eqs.push_back(make_row(std::move(entries)));
    }
    const int ncols = static_cast<int>(cols.size());
    const int rank_z = rank(std::move(eqs), ncols);

    std::map<Index, int> lower;
    std::vector<SparseRow> bnd;
    for (const auto& [T, col] : cols) {
        std::vector<std::pair<int, Rational>> entries;
        for (const auto& [idx, v] : differential_form(base, q - 1, l, T)) {
            auto [it, fresh] = lower.emplace(idx, static_cast<int>(lower.size()));
            entries.emplace_back(it->second, v);
        }
        if (!entries.empty()) bnd.push_back(make_row(std::move(entries)));
    }
    const int rank_b = rank(std::move(bnd), static_cast<int>(lower.size()));

    if (cocycles) *cocycles = ncols - rank_z;
    if (coboundaries) *coboundaries = rank_b;
    return ncols - rank_z - rank_b;
}

CohomologyReport cohomology_dim(int q, int l, int N) {
    CohomologyReport r;
    r.q = q;
    r.l = l;
    r.N = N;
    r.dim_window = cohomology_dim_window(q, l, N, &r.cocycle_dim, &r.coboundary_rank);
    r.stable = cohomology_dim_window(q, l, N + 5) == r.dim_window &&
               cohomology_dim_window(q, l, N + 10) == r.dim_window;
    return r;
}

std::vector<NamedGenerator> h1_generators(int l, int max_index) {
    std::vector<NamedGenerator> out;
    if (l == 0) {
        HomCochain w1(1, 0, max_index), w2(1, 0, max_index);
        w1.set({1}, 1);
        for (int k = 3; k <= max_index; ++k) w1.set({k}, k - 2);
        for (int k = 2; k <= max_index; ++k) w2.set({k}, 1);
        out.push_back({"omega1", 0, w1});
        out.push_back({"omega2", 0, w2});
    } else if (l == 1) {
        HomCochain g(1, 1, max_index), a(1, 1, max_index);
        g.set({1}, 1);
        for (int k = 2; k <= max_index; ++k) a.set({k}, 1);
        out.push_back({"gamma", 1, g});
        out.push_back({"alpha1", 1, a, true});
    } else if (l >= 2) {
        HomCochain a(1, l, max_index);
        for (int k = 2; k <= max_index; ++k) a.set({k}, 1);
        out.push_back({"alpha" + std::to_string(l), l, a});
    }
    return out;
}

namespace {

// (a o b)(x_T): sum over (r, p-1) shuffles of sgn * a(b(x_S), x_rest).
std::optional<Rational> compose_at(const HomCochain& a, const HomCochain& b, const Index& T) {
    const int n = static_cast<int>(T.size());
    const int r = b.degree();
    Rational total;
    std::vector<int> pick(n, 0);
    std::fill(pick.begin(), pick.begin() + r, 1);
    // prev_permutation over a sorted-descending mask enumerates subsets in lex order
    do {
        Index S, rest;
        int inversions = 0, seen_rest = 0;
        for (int p = 0; p < n; ++p) {
            if (pick[p]) {
                S.push_back(T[p]);
                inversions += seen_rest;
            } else {
                rest.push_back(T[p]);
                ++seen_rest;
            }
        }
        for (int x : S)
            if (x > b.max_index()) return std::nullopt;
        Rational bv = b.at(S);
        if (bv == 0) continue;
        int d = sum_of(S) + b.weight();
        if (d < 1) continue;
        Index args{d};
        args.insert(args.end(), rest.begin(), rest.end());
        for (int x : args)
            if (x > a.max_index()) return std::nullopt;
        Rational av = a.at(args);
        total += (inversions % 2 ? -1 : 1) * bv * av;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return total;
}

}  // namespace

HomCochain nr_bracket(const HomCochain& a, const HomCochain& b) {
    const int p = a.degree(), r = b.degree();
    if (p < 1 || r < 1 || p + r - 1 > 3)
        throw Error(ErrorCode::UnsupportedDegree, "bracket of these degrees is not representable");
    const int n = p + r - 1;
    const int sign = ((p - 1) * (r - 1)) % 2 ? -1 : 1;
    const int l = a.weight() + b.weight();
    const int limit = std::min(a.max_index(), b.max_index());
    int out_max = 0;
    std::vector<std::pair<Index, Rational>> values;
    for (int m = 1; m <= limit; ++m) {
        std::vector<std::pair<Index, Rational>> layer;
        bool ok = true;
        for (const auto& T : tuples_ending_at(n, m)) {
            if (sum_of(T) + l < 1) continue;
            auto ab = compose_at(a, b, T);
            auto ba = compose_at(b, a, T);
            if (!ab || !ba) {
                ok = false;
                break;
            }
            Rational v = *ab - sign * *ba;
            if (v != 0) layer.emplace_back(T, v);
        }
        if (!ok) break;
        out_max = m;
        for (auto& e : layer) values.push_back(std::move(e));
    }
    if (out_max < 1) throw Error(ErrorCode::WindowError, "no common window for the bracket");
    HomCochain out(n, l, out_max);
    for (const auto& [T, v] : values) out.set(T, v);
    return out;
}

HomCochain nr_bracket_deg1(const HomCochain& a, const HomCochain& b) {
    if (a.degree() != 1 || b.degree() != 1)
        throw Error(ErrorCode::UnsupportedDegree, "nr_bracket_deg1 needs two 1-cochains");
    return nr_bracket(a, b);
}

namespace {

struct CoboundarySystem {
    std::map<Index, int> cols;        // q-coordinates of c's window, lex order
    std::map<Index, int> lower;       // (q-1)-coordinates
    std::vector<SparseRow> by_lower;  // d(unit) restricted to the window
    std::vector<SparseRow> by_col;    // differential forms, one per q-coordinate
};

CoboundarySystem coboundary_system(const HomCochain& c, const GradedAlgebra& base) {
    CoboundarySystem sys;
    const int q = c.degree();
    for (const auto& T : increasing_tuples(q, 1, c.max_index()))
        if (sum_of(T) + c.weight() >= 1) sys.cols.emplace(T, static_cast<int>(sys.cols.size()));
    std::map<int, std::vector<std::pair<int, Rational>>> scatter;
    for (const auto& [T, col] : sys.cols) {
        std::vector<std::pair<int, Rational>> entries;
        for (const auto& [idx, v] : differential_form(base, q - 1, c.weight(), T)) {
            auto [it, fresh] = sys.lower.emplace(idx, static_cast<int>(sys.lower.size()));
            entries.emplace_back(it->second, v);
            scatter[it->second].emplace_back(col, v);
        }
        sys.by_col.push_back(make_row(std::move(entries)));
    }
    sys.by_lower.resize(sys.lower.size());
    for (auto& [lo, entries] : scatter) sys.by_lower[lo] = make_row(std::move(entries));
    return sys;
}

}  // namespace

HomCochain reduce_mod_coboundary(const HomCochain& c, const GradedAlgebra& base) {
    if (c.degree() < 1 || c.degree() > 2)
        throw Error(ErrorCode::UnsupportedDegree, "reduction for q in {1,2}");
    auto check = is_cocycle(c, base);
    if (!check.ok) throw Error(ErrorCode::NotACocycle, "input is not a cocycle");
    CoboundarySystem sys = coboundary_system(c, base);
    Echelon e = reduced_row_echelon(sys.by_lower, static_cast<int>(sys.cols.size()));
    std::vector<std::pair<int, Rational>> entries;
    for (const auto& [idx, v] : c.coeffs()) entries.emplace_back(sys.cols.at(idx), v);
    SparseRow nf = normal_form(e, make_row(std::move(entries)));
    std::vector<Index> by_position(sys.cols.size());
    for (const auto& [idx, col] : sys.cols) by_position[col] = idx;
    HomCochain out(c.degree(), c.weight(), c.max_index());
    for (const auto& [col, v] : nf) out.set(by_position[col], v);
    return out;
}

HomCochain reduce_mod_coboundary(const HomCochain& c) {
    return reduce_mod_coboundary(c, default_base(c));
}

std::optional<HomCochain> find_primitive(const HomCochain& c, const GradedAlgebra& base) {
    if (c.degree() < 1) throw Error(ErrorCode::UnsupportedDegree, "no primitive below degree 1");
    CoboundarySystem sys = coboundary_system(c, base);
    std::vector<Rational> rhs;
    for (const auto& [idx, col] : sys.cols) rhs.push_back(c.at(idx));
    auto x = solve(sys.by_col, rhs, static_cast<int>(sys.lower.size()));
    if (!x) return std::nullopt;
    int top = 1;
    for (const auto& [idx, lo] : sys.lower)
        for (int v : idx) top = std::max(top, v);
    HomCochain beta(c.degree() - 1, c.weight(), top);
    for (const auto& [idx, lo] : sys.lower) beta.set(idx, (*x)[lo]);
    return beta;
}

std::optional<HomCochain> find_primitive(const HomCochain& c) {
    return find_primitive(c, default_base(c));
}

}  // namespace filiform
