#include "filiform/linalg.hpp"

#include <algorithm>
#include <map>

namespace filiform {

SparseRow make_row(std::vector<std::pair<int, Rational>> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow out;
    for (auto& [c, v] : entries) {
        if (!out.empty() && out.back().first == c)
            out.back().second += v;
        else
            out.emplace_back(c, std::move(v));
        if (out.back().second == 0) out.pop_back();
    }
    return out;
}

Rational row_at(const SparseRow& row, int col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    if (it != row.end() && it->first == col) return it->second;
    return 0;
}

SparseRow axpy(const SparseRow& a, const Rational& f, const SparseRow& b) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, f * b[j].second);
            ++j;
        } else {
            Rational v = a[i].second + f * b[j].second;
            if (v != 0) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

Echelon row_echelon(std::vector<SparseRow> rows, int ncols) {
    std::map<int, std::vector<SparseRow>> buckets;
    for (auto& r : rows)
        if (!r.empty()) buckets[r.front().first].push_back(std::move(r));

    Echelon e;
    e.ncols = ncols;
    while (!buckets.empty()) {
        auto node = buckets.extract(buckets.begin());
        int col = node.key();
        auto& group = node.mapped();

        size_t best = 0;
        for (size_t r = 1; r < group.size(); ++r)
            if (bit_size(group[r].front().second) < bit_size(group[best].front().second)) best = r;
        SparseRow pivot = std::move(group[best]);
        Rational inv = 1 / pivot.front().second;
        for (auto& [c, v] : pivot) v *= inv;

        for (size_t r = 0; r < group.size(); ++r) {
            if (r == best) continue;
            Rational f = -group[r].front().second;
            SparseRow reduced = axpy(group[r], f, pivot);
            if (!reduced.empty()) buckets[reduced.front().first].push_back(std::move(reduced));
        }
        e.pivots.push_back(col);
        e.rows.push_back(std::move(pivot));
    }
    return e;
}

Echelon reduced_row_echelon(std::vector<SparseRow> rows, int ncols) {
    Echelon e = row_echelon(std::move(rows), ncols);
    for (int r = e.rank() - 1; r >= 0; --r) {
        for (int s = 0; s < r; ++s) {
            Rational c = row_at(e.rows[s], e.pivots[r]);
            if (c != 0) e.rows[s] = axpy(e.rows[s], -c, e.rows[r]);
        }
    }
    e.reduced = true;
    return e;
}

int rank(std::vector<SparseRow> rows, int ncols) {
    return row_echelon(std::move(rows), ncols).rank();
}

SparseRow normal_form(const Echelon& rref, SparseRow v) {
    for (int r = 0; r < rref.rank(); ++r) {
        Rational c = row_at(v, rref.pivots[r]);
        if (c != 0) v = axpy(v, -c, rref.rows[r]);
    }
    return v;
}

std::optional<std::vector<Rational>> solve(const std::vector<SparseRow>& A,
                                           const std::vector<Rational>& b, int ncols) {
    std::vector<SparseRow> aug;
    aug.reserve(A.size());
    for (size_t r = 0; r < A.size(); ++r) {
        SparseRow row = A[r];
        if (b[r] != 0) row.emplace_back(ncols, b[r]);
        aug.push_back(std::move(row));
    }
    Echelon e = reduced_row_echelon(std::move(aug), ncols + 1);
    std::vector<Rational> x(ncols);
    for (int r = 0; r < e.rank(); ++r) {
        if (e.pivots[r] == ncols) return std::nullopt;
        x[e.pivots[r]] = row_at(e.rows[r], ncols);
    }
    return x;
}

}  // namespace filiform
