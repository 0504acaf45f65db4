#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bqa/scalar.hpp"

namespace bqa {

/// Sparse coefficient vector: (index, nonzero scalar) pairs sorted by index.
using SparseVec = std::vector<std::pair<int, Scalar>>;

inline SparseVec sparse_unit(int idx, const Scalar& c) {
    if (c.is_zero()) return {};
    return {{idx, c}};
}

/// dst += c * src, merging sorted supports and dropping created zeros.
inline void sparse_axpy(SparseVec& dst, const Scalar& c, const SparseVec& src) {
    if (c.is_zero() || src.empty()) return;
    SparseVec out;
    out.reserve(dst.size() + src.size());
    std::size_t a = 0, b = 0;
    while (a < dst.size() || b < src.size()) {
        if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
            out.push_back(dst[a++]);
        } else if (a == dst.size() || src[b].first < dst[a].first) {
            out.emplace_back(src[b].first, c * src[b].second);
            if (out.back().second.is_zero()) out.pop_back();
            ++b;
        } else {
            Scalar v = dst[a].second + c * src[b].second;
            if (!v.is_zero()) out.emplace_back(dst[a].first, v);
            ++a;
            ++b;
        }
    }
    dst = std::move(out);
}

inline void sparse_scale(SparseVec& v, const Scalar& c) {
    if (c.is_zero()) {
        v.clear();
        return;
    }
    for (auto& [i, x] : v) x *= c;
}

inline Scalar sparse_get(const SparseVec& v, int idx, const FieldDescriptor& f) {
    for (const auto& [i, x] : v)
        if (i == idx) return x;
    return Scalar::zero(f);
}

enum class Pivot { High, Low };

/// Incremental exact row echelon form with a fixed pivot policy. Pivot::High
/// eliminates the largest coordinate of each row (ideal reduction, longest
/// words first); Pivot::Low the smallest (canonical quotient representatives).
/// Stored rows are monic at their pivot, which is the extreme coordinate of
/// their support, so reduction in policy order always terminates.
class RowEchelon {
public:
    explicit RowEchelon(Pivot policy) : policy_(policy) {}

    /// Clears every pivot coordinate of v against the stored rows.
    void reduce(SparseVec& v) const {
        for (;;) {
            auto hit = next_pivot_coord(v);
            if (!hit.first) return;
            const SparseVec& row = rows_.at(hit.second);
            Scalar c = -sparse_get(v, hit.second, field_of(v));
            sparse_axpy(v, c, row);
        }
    }

    /// Reduces and, if nonzero, stores v normalized monic at its pivot.
    /// Returns true when the rank grew.
    bool insert(SparseVec v) {
        reduce(v);
        if (v.empty()) return false;
        int piv = extreme_coord(v);
        Scalar lead = sparse_get(v, piv, field_of(v));
        sparse_scale(v, lead.inverse());
        rows_.emplace(piv, std::move(v));
        return true;
    }

    std::size_t rank() const { return rows_.size(); }
    const std::map<int, SparseVec>& rows() const { return rows_; }
    bool is_pivot(int idx) const { return rows_.count(idx) != 0; }

    /// Back-substitutes so row tails contain no pivot coordinates (RREF).
    void normalize() {
        for (auto& [piv, row] : rows_) {
            for (;;) {
                auto hit = next_pivot_coord(row, piv);
                if (!hit.first) break;
                Scalar c = -sparse_get(row, hit.second, field_of(row));
                sparse_axpy(row, c, rows_.at(hit.second));
            }
        }
    }

    bool contains(SparseVec v) const {
        reduce(v);
        return v.empty();
    }

    /// Reduces v to its canonical residue, recording the multiplier applied
    /// to each pivot row. Requires normalize() to have run for one-pass use.
    void reduce_with_coeffs(SparseVec& v, std::map<int, Scalar>& used) const {
        for (;;) {
            auto hit = next_pivot_coord(v);
            if (!hit.first) return;
            Scalar c = sparse_get(v, hit.second, field_of(v));
            auto [it, fresh] = used.emplace(hit.second, c);
            if (!fresh) it->second += c;
            sparse_axpy(v, -c, rows_.at(hit.second));
        }
    }

private:
    static FieldDescriptor field_of(const SparseVec& v) {
        return v.empty() ? FieldDescriptor::rationals() : v.front().second.field();
    }

    int extreme_coord(const SparseVec& v) const {
        return policy_ == Pivot::High ? v.back().first : v.front().first;
    }

    // Policy-order scan: the extreme-most coordinate of v that is a pivot
    // (skipping `self`); eliminating in this order terminates because each
    // elimination only introduces coordinates strictly past the one cleared.
    std::pair<bool, int> next_pivot_coord(const SparseVec& v, int self = -1) const {
        if (policy_ == Pivot::High) {
            for (std::size_t k = v.size(); k-- > 0;)
                if (v[k].first != self && rows_.count(v[k].first)) return {true, v[k].first};
        } else {
            for (std::size_t k = 0; k < v.size(); ++k)
                if (v[k].first != self && rows_.count(v[k].first)) return {true, v[k].first};
        }
        return {false, -1};
    }

    Pivot policy_;
    std::map<int, SparseVec> rows_;
};

/// Basis of { c in K^n : sum_i c_i rows[i] = 0 } for n = rows.size(), where
/// each row lives in coordinates [0, target_dim). Deterministic RREF output.
inline std::vector<SparseVec> left_kernel(const std::vector<SparseVec>& rows, int target_dim,
                                          const FieldDescriptor& f) {
    // Gaussian elimination on [row | unit tracker]; pivots only in the
    // real block. Rows whose real part cancels yield kernel vectors.
    std::map<int, SparseVec> ech;
    std::vector<SparseVec> kernel;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        SparseVec v = rows[i];
        v.emplace_back(target_dim + static_cast<int>(i), Scalar::one(f));
        for (;;) {
            int piv = -1;
            Scalar pc = Scalar::zero(f);
            for (std::size_t k = v.size(); k-- > 0;) {
                if (v[k].first < target_dim) {
                    piv = v[k].first;
                    pc = v[k].second;
                    break;
                }
            }
            if (piv < 0) {
                SparseVec combo;
                for (const auto& [idx, c] : v) combo.emplace_back(idx - target_dim, c);
                kernel.push_back(std::move(combo));
                break;
            }
            auto it = ech.find(piv);
            if (it == ech.end()) {
                sparse_scale(v, pc.inverse());
                ech.emplace(piv, std::move(v));
                break;
            }
            sparse_axpy(v, -pc, it->second);
        }
    }
    RowEchelon canon(Pivot::Low);
    for (auto& k : kernel) canon.insert(std::move(k));
    canon.normalize();
    std::vector<SparseVec> out;
    for (const auto& [piv, row] : canon.rows()) out.push_back(row);
    return out;
}

/// Rank of a family of sparse rows.
inline std::size_t row_rank(const std::vector<SparseVec>& rows) {
    RowEchelon ech(Pivot::Low);
    for (const auto& r : rows) ech.insert(r);
    return ech.rank();
}

/// Exact determinant of a dense square matrix by Gaussian elimination.
inline Scalar dense_det(std::vector<std::vector<Scalar>> m, const FieldDescriptor& f) {
    const std::size_t n = m.size();
    Scalar det = Scalar::one(f);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return Scalar::zero(f);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Scalar inv = m[col][col].inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            Scalar factor = m[r][col] * inv;
            for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    return det;
}

}  // namespace bqa
