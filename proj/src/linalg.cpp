#include "radford/linalg.hpp"

#include <algorithm>

#include "radford/util.hpp"

namespace rad {

SparseVec sv_normalize(SparseVec v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    out.reserve(v.size());
    for (auto& e : v) {
        if (!out.empty() && out.back().first == e.first)
            out.back().second = out.back().second + e.second;
        else
            out.push_back(std::move(e));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return e.second.is_zero(); }),
              out.end());
    return out;
}

SparseVec sv_add(const SparseVec& a, const SparseVec& b) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i >= a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            ThetaScalar s = a[i].second + b[j].second;
            if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec sv_axpy(const SparseVec& a, const ThetaScalar& f, const SparseVec& b) {
    if (f.is_zero()) return a;
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i >= a.size() || b[j].first < a[i].first) {
            ThetaScalar s = f * b[j].second;
            if (!s.is_zero()) out.emplace_back(b[j].first, std::move(s));
            ++j;
        } else {
            ThetaScalar s = a[i].second + f * b[j].second;
            if (!s.is_zero()) out.emplace_back(a[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec sv_scale(const SparseVec& a, const ThetaScalar& f) {
    if (f.is_zero()) return {};
    SparseVec out;
    out.reserve(a.size());
    for (const auto& e : a) {
        ThetaScalar s = f * e.second;
        if (!s.is_zero()) out.emplace_back(e.first, std::move(s));
    }
    return out;
}

ThetaScalar sv_get(const SparseVec& v, int idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx,
                               [](const auto& e, int k) { return e.first < k; });
    if (it != v.end() && it->first == idx) return it->second;
    return ThetaScalar();
}

bool sv_is_zero(const SparseVec& v) { return v.empty(); }

SparseMatrix::SparseMatrix(int r, int c, int cap) : rows(r), cols(c), row(r) {
    if (r > cap || c > cap)
        throw CapExceeded("matrix dimension " + std::to_string(std::max(r, c)) +
                          " exceeds cap " + std::to_string(cap));
}

SparseMatrix SparseMatrix::identity(int n, const ScalarContext& ctx, int cap) {
    SparseMatrix m(n, n, cap);
    for (int i = 0; i < n; ++i) m.row[i].emplace_back(i, ctx.one());
    return m;
}

void SparseMatrix::add(int r, int c, const ThetaScalar& v) {
    if (v.is_zero()) return;
    auto& rr = row[r];
    auto it = std::lower_bound(rr.begin(), rr.end(), c,
                               [](const auto& e, int k) { return e.first < k; });
    if (it != rr.end() && it->first == c) {
        it->second = it->second + v;
        if (it->second.is_zero()) rr.erase(it);
    } else {
        rr.insert(it, {c, v});
    }
}

ThetaScalar SparseMatrix::get(int r, int c) const { return sv_get(row[r], c); }

int SparseMatrix::nnz() const {
    int t = 0;
    for (const auto& r : row) t += (int)r.size();
    return t;
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
    SparseVec out;
    for (int r = 0; r < rows; ++r) {
        ThetaScalar acc;
        bool any = false;
        size_t i = 0, j = 0;
        const auto& rr = row[r];
        while (i < rr.size() && j < x.size()) {
            if (rr[i].first < x[j].first)
                ++i;
            else if (x[j].first < rr[i].first)
                ++j;
            else {
                ThetaScalar t = rr[i].second * x[j].second;
                acc = any ? acc + t : t;
                any = true;
                ++i;
                ++j;
            }
        }
        if (any && !acc.is_zero()) out.emplace_back(r, std::move(acc));
    }
    return out;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw Error("matrix product shape mismatch");
    SparseMatrix out(a.rows, b.cols, std::max(a.rows, b.cols));
    parallel_for((size_t)a.rows, [&](size_t r) {
        SparseVec acc;
        for (const auto& [k, f] : a.row[r]) acc = sv_axpy(acc, f, b.row[k]);
        out.row[r] = std::move(acc);
    });
    return out;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw Error("matrix sum shape mismatch");
    SparseMatrix out(a.rows, a.cols, std::max(a.rows, a.cols));
    for (int r = 0; r < a.rows; ++r) out.row[r] = sv_add(a.row[r], b.row[r]);
    return out;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw Error("matrix difference shape mismatch");
    SparseMatrix out(a.rows, a.cols, std::max(a.rows, a.cols));
    for (int r = 0; r < a.rows; ++r) {
        SparseVec nb = b.row[r];
        for (auto& e : nb) e.second = -e.second;
        out.row[r] = sv_add(a.row[r], nb);
    }
    return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (int r = 0; r < a.rows; ++r)
        if (a.row[r] != b.row[r]) return false;
    return true;
}

SparseMatrix SparseMatrix::scaled(const ThetaScalar& f) const {
    SparseMatrix out(rows, cols, std::max(rows, cols));
    for (int r = 0; r < rows; ++r) out.row[r] = sv_scale(row[r], f);
    return out;
}

SparseMatrix SparseMatrix::transposed() const {
    SparseMatrix out(cols, rows, std::max(rows, cols));
    for (int r = 0; r < rows; ++r)
        for (const auto& [c, v] : row[r]) out.row[c].emplace_back(r, v);
    for (auto& rr : out.row)
        std::sort(rr.begin(), rr.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

bool SparseMatrix::is_zero() const {
    for (const auto& r : row)
        if (!r.empty()) return false;
    return true;
}

namespace {

struct Echelon {
    std::vector<SparseVec> rows;  // normalized pivot rows
    std::vector<int> pivot_col;
};

// Forward elimination with invertible-pivot selection; `skip_col` (if >= 0)
// is never chosen as a pivot (used for augmented solves). Pivot policy:
// prefer th = 0 entries, then short rows, keeping fill-in low on symmetrizer
// matrices whose entries are monomials in xi.
Echelon eliminate(std::vector<SparseVec> work, int skip_col) {
    work.erase(std::remove_if(work.begin(), work.end(), sv_is_zero), work.end());
    Echelon ech;
    while (!work.empty()) {
        int best = -1, best_key = 0, best_col = -1;
        size_t best_len = 0;
        for (int i = 0; i < (int)work.size(); ++i) {
            const auto& r = work[i];
            int col = -1, key = 2;
            for (const auto& [c, v] : r) {
                if (c == skip_col) continue;
                if (!theta_invertible(v)) continue;
                int k = v.th.is_zero() ? 0 : 1;
                if (k < key) {
                    key = k;
                    col = c;
                }
                if (key == 0) break;
            }
            if (col < 0) continue;
            if (best < 0 || key < best_key || (key == best_key && r.size() < best_len)) {
                best = i;
                best_key = key;
                best_len = r.size();
                best_col = col;
            }
        }
        if (best < 0) {
            for (const auto& r : work) {
                bool only_skip = true;
                for (const auto& [c, v] : r)
                    if (c != skip_col) only_skip = false;
                if (!only_skip) throw NonInvertiblePivot();
            }
            // leftovers live entirely in the skipped column; keep them so
            // solve() can detect inconsistency
            for (auto& r : work) {
                ech.rows.push_back(std::move(r));
                ech.pivot_col.push_back(-1);
            }
            break;
        }
        SparseVec piv = sv_scale(work[best], theta_inv(sv_get(work[best], best_col)));
        work.erase(work.begin() + best);
        int pc = best_col;
        parallel_for(work.size(), [&](size_t i) {
            ThetaScalar f = sv_get(work[i], pc);
            if (!f.is_zero()) work[i] = sv_axpy(work[i], -f, piv);
        });
        work.erase(std::remove_if(work.begin(), work.end(), sv_is_zero), work.end());
        ech.rows.push_back(std::move(piv));
        ech.pivot_col.push_back(pc);
    }
    return ech;
}

// reduce pivot rows against each other (reduced echelon form)
void back_substitute(Echelon& ech) {
    for (int i = (int)ech.rows.size() - 1; i >= 0; --i) {
        if (ech.pivot_col[i] < 0) continue;
        for (int j = 0; j < (int)ech.rows.size(); ++j) {
            if (j == i || ech.pivot_col[j] < 0) continue;
            ThetaScalar f = sv_get(ech.rows[j], ech.pivot_col[i]);
            if (!f.is_zero()) ech.rows[j] = sv_axpy(ech.rows[j], -f, ech.rows[i]);
        }
    }
}

} // namespace

int rank(const SparseMatrix& m) {
    Echelon e = eliminate(m.row, -1);
    return (int)e.rows.size();
}

KernelBasis kernel_basis(const SparseMatrix& m, const ScalarContext& ctx) {
    Echelon ech = eliminate(m.row, -1);
    back_substitute(ech);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : ech.pivot_col)
        if (c >= 0) is_pivot[c] = true;
    KernelBasis kb;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        SparseVec v;
        v.emplace_back(c, ctx.one());
        for (size_t i = 0; i < ech.rows.size(); ++i) {
            ThetaScalar f = sv_get(ech.rows[i], c);
            if (!f.is_zero()) v.emplace_back(ech.pivot_col[i], -f);
        }
        kb.vectors.push_back(sv_normalize(std::move(v)));
    }
    return kb;
}

std::optional<SparseVec> solve(const SparseMatrix& a, const SparseVec& b) {
    std::vector<SparseVec> work = a.row;
    for (const auto& [r, v] : b) {
        SparseVec& rr = work[r];
        auto it = std::lower_bound(rr.begin(), rr.end(), a.cols,
                                   [](const auto& e, int k) { return e.first < k; });
        rr.insert(it, {a.cols, v});
    }
    Echelon ech = eliminate(std::move(work), a.cols);
    for (size_t i = 0; i < ech.rows.size(); ++i)
        if (ech.pivot_col[i] < 0 && !ech.rows[i].empty()) return std::nullopt;
    back_substitute(ech);
    SparseVec x;
    for (size_t i = 0; i < ech.rows.size(); ++i) {
        if (ech.pivot_col[i] < 0) continue;
        ThetaScalar rhs = sv_get(ech.rows[i], a.cols);
        if (!rhs.is_zero()) x.emplace_back(ech.pivot_col[i], rhs);
    }
    return sv_normalize(std::move(x));
}

std::optional<SparseMatrix> inverse(const SparseMatrix& a) {
    if (a.rows != a.cols) return std::nullopt;
    const ScalarContext* ctx = nullptr;
    for (const auto& r : a.row)
        if (!r.empty()) {
            ctx = r[0].second.context();
            break;
        }
    if (!ctx) return std::nullopt;
    SparseMatrix inv(a.rows, a.cols, std::max(a.rows, a.cols));
    for (int c = 0; c < a.cols; ++c) {
        SparseVec e{{c, ctx->one()}};
        auto x = solve(a, e);
        if (!x) return std::nullopt;
        for (const auto& [r, v] : *x) inv.add(r, c, v);
    }
    // solve() zero-fills free variables, which silently "solves" singular
    // systems; confirm the result really inverts
    SparseMatrix prod = a * inv;
    if (!(prod == SparseMatrix::identity(a.rows, *ctx, std::max(a.rows, a.cols))))
        return std::nullopt;
    return inv;
}

SparseMatrix compose_on_tensor_slot(const SparseMatrix& c, int d, int n, int j, int cap) {
    if (j < 1 || j > n - 1) throw UsageError("tensor slot index out of range");
    if (c.rows != d * d || c.cols != d * d) throw UsageError("braiding block must be d^2 x d^2");
    long dim = 1;
    for (int k = 0; k < n; ++k) {
        dim *= d;
        if (dim > cap) throw CapExceeded("tensor power dimension exceeds cap");
    }
    SparseMatrix ct = c.transposed();  // column access
    SparseMatrix out((int)dim, (int)dim, cap);
    long stride_hi = 1;  // stride of digit j-1 (0-based digit index j-1)
    for (int k = 0; k < n - j; ++k) stride_hi *= d;
    long stride_lo = stride_hi / d;
    for (long I = 0; I < dim; ++I) {
        int a = (int)((I / stride_hi) % d);
        int b = (int)((I / stride_lo) % d);
        long base = I - (long)a * stride_hi - (long)b * stride_lo;
        int col = a * d + b;
        for (const auto& [rr, v] : ct.row[col]) {
            int na = rr / d, nb = rr % d;
            long row_idx = base + (long)na * stride_hi + (long)nb * stride_lo;
            out.row[row_idx].emplace_back((int)I, v);
        }
    }
    for (auto& r : out.row)
        std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

} // namespace rad
