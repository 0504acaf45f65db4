#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bqa/algebra.hpp"
#include "bqa/linalg.hpp"

namespace bqa {

struct ComplexError : Error {
    using Error::Error;
};

using Elem = FiniteDimAlgebra::Elem;
using ElemMatrix = std::vector<std::vector<Elem>>;

/// Bounded complex of projective right modules P_i = e_i A. Terms are lists
/// of projective indices; the differential d^n : term(n) -> term(n-1) is a
/// matrix whose (r, c) entry lies in e_{term(n-1)[r]} A e_{term(n)[c]},
/// acting by left multiplication. d o d = 0 is checked on construction.
class ProjComplex {
public:
    ProjComplex() = default;

    /// terms[t] is the term in degree lo + t; diffs[t] maps degree lo+t+1 to
    /// degree lo+t.
    ProjComplex(const FiniteDimAlgebra& A, int lo, std::vector<std::vector<int>> terms,
                std::vector<ElemMatrix> diffs)
        : A_(&A), lo_(lo), terms_(std::move(terms)), diffs_(std::move(diffs)) {
        hi_ = lo_ + static_cast<int>(terms_.size()) - 1;
        if (terms_.empty()) {
            lo_ = 0;
            hi_ = -1;
        }
        if (diffs_.size() + 1 != terms_.size() && !(terms_.empty() && diffs_.empty()))
            throw ComplexError("differential count does not match term count");
        validate();
    }

    static ProjComplex zero(const FiniteDimAlgebra& A) { return ProjComplex(A, 0, {}, {}); }

    const FiniteDimAlgebra& algebra() const { return *A_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool empty() const { return hi_ < lo_; }

    const std::vector<int>& term(int n) const {
        static const std::vector<int> none;
        if (n < lo_ || n > hi_) return none;
        return terms_[static_cast<std::size_t>(n - lo_)];
    }

    /// d^n for lo < n <= hi; the empty matrix elsewhere.
    const ElemMatrix& diff(int n) const {
        static const ElemMatrix none;
        if (n <= lo_ || n > hi_) return none;
        return diffs_[static_cast<std::size_t>(n - lo_ - 1)];
    }

    /// K-dimension of the term in degree n.
    long term_dim(int n) const {
        long d = 0;
        for (int v : term(n))
            for (int j = 1; j <= A_->vertex_count(); ++j) d += A_->block_dim(v, j);
        return d;
    }

    /// Per-vertex alternating sum of term multiplicities.
    std::vector<long> euler_vector() const {
        std::vector<long> chi(static_cast<std::size_t>(A_->vertex_count()), 0);
        for (int n = lo_; n <= hi_; ++n) {
            long sign = (n % 2 == 0) ? 1 : -1;
            for (int v : term(n)) chi[static_cast<std::size_t>(v - 1)] += sign;
        }
        return chi;
    }

    bool same_shape(const ProjComplex& o) const {
        if (lo_ != o.lo_ || hi_ != o.hi_) return false;
        for (int n = lo_; n <= hi_; ++n)
            if (term(n) != o.term(n)) return false;
        return true;
    }

private:
    void validate() const {
        for (int n = lo_ + 1; n <= hi_; ++n) {
            const ElemMatrix& d = diff(n);
            const std::vector<int>& src = term(n);
            const std::vector<int>& tgt = term(n - 1);
            if (d.size() != tgt.size()) throw ComplexError("differential row count mismatch");
            for (std::size_t r = 0; r < d.size(); ++r) {
                if (d[r].size() != src.size())
                    throw ComplexError("differential column count mismatch");
                for (std::size_t c = 0; c < d[r].size(); ++c) {
                    const Elem& x = d[r][c];
                    if (x.is_zero()) continue;
                    if (x.src != tgt[r] || x.tgt != src[c])
                        throw ComplexError("differential entry in wrong component");
                }
            }
        }
        for (int n = lo_ + 2; n <= hi_; ++n) {
            const ElemMatrix& d1 = diff(n - 1);
            const ElemMatrix& d2 = diff(n);
            for (std::size_t r = 0; r < d1.size(); ++r)
                for (std::size_t c = 0; c < d2[0].size(); ++c) {
                    Elem acc;
                    for (std::size_t k = 0; k < d2.size(); ++k) {
                        if (d1[r][k].is_zero() || d2[k][c].is_zero()) continue;
                        acc = A_->add(acc, A_->mul(d1[r][k], d2[k][c]));
                    }
                    if (!acc.is_zero()) throw ComplexError("d o d != 0");
                }
        }
    }

    const FiniteDimAlgebra* A_ = nullptr;
    int lo_ = 0;
    int hi_ = -1;
    std::vector<std::vector<int>> terms_;
    std::vector<ElemMatrix> diffs_;
};

/// Stalk complex of P_i concentrated in degree 0.
inline ProjComplex stalk(const FiniteDimAlgebra& A, int i) {
    return ProjComplex(A, 0, {{i}}, {});
}

/// Two-term complex P_i -> P_j in degrees 1 and 0 with differential d,
/// which must lie in e_j A e_i.
inline ProjComplex two_term(const FiniteDimAlgebra& A, int i, int j, const Elem& d) {
    if (d.is_zero() || d.src != j || d.tgt != i)
        throw ComplexError("two_term differential must be a nonzero element of e_" +
                           std::to_string(j) + " A e_" + std::to_string(i));
    return ProjComplex(A, 0, {{j}, {i}}, {ElemMatrix{{d}}});
}

/// Degree shift: X[k]^n = X^{n-k}, differentials scaled by (-1)^k.
inline ProjComplex shift(const ProjComplex& X, int k) {
    if (X.empty()) return X;
    const FiniteDimAlgebra& A = X.algebra();
    Scalar sign = Scalar::of_int(A.field(), (k % 2 == 0) ? 1 : -1);
    std::vector<std::vector<int>> terms;
    std::vector<ElemMatrix> diffs;
    for (int n = X.lo(); n <= X.hi(); ++n) terms.push_back(X.term(n));
    for (int n = X.lo() + 1; n <= X.hi(); ++n) {
        ElemMatrix d = X.diff(n);
        for (auto& row : d)
            for (auto& x : row) x = A.scale(x, sign);
        diffs.push_back(std::move(d));
    }
    return ProjComplex(A, X.lo() + k, std::move(terms), std::move(diffs));
}

inline ProjComplex direct_sum(const std::vector<ProjComplex>& parts) {
    if (parts.empty()) throw ComplexError("direct sum of nothing");
    const FiniteDimAlgebra& A = parts.front().algebra();
    int lo = 0, hi = -1;
    bool any = false;
    for (const ProjComplex& p : parts) {
        if (p.empty()) continue;
        if (!any) {
            lo = p.lo();
            hi = p.hi();
            any = true;
        } else {
            lo = std::min(lo, p.lo());
            hi = std::max(hi, p.hi());
        }
    }
    if (!any) return ProjComplex::zero(A);
    std::vector<std::vector<int>> terms;
    for (int n = lo; n <= hi; ++n) {
        std::vector<int> t;
        for (const ProjComplex& p : parts)
            for (int v : p.term(n)) t.push_back(v);
        terms.push_back(std::move(t));
    }
    std::vector<ElemMatrix> diffs;
    for (int n = lo + 1; n <= hi; ++n) {
        std::size_t rows = terms[static_cast<std::size_t>(n - 1 - lo)].size();
        std::size_t cols = terms[static_cast<std::size_t>(n - lo)].size();
        ElemMatrix d(rows, std::vector<Elem>(cols));
        std::size_t r0 = 0, c0 = 0;
        for (const ProjComplex& p : parts) {
            const ElemMatrix& pd = p.diff(n);
            for (std::size_t r = 0; r < pd.size(); ++r)
                for (std::size_t c = 0; c < pd[r].size(); ++c) d[r0 + r][c0 + c] = pd[r][c];
            r0 += p.term(n - 1).size();
            c0 += p.term(n).size();
        }
        diffs.push_back(std::move(d));
    }
    return ProjComplex(A, lo, std::move(terms), std::move(diffs));
}

/// Degreewise collection of matrices f^n : X^n -> Y^n commuting with the
/// differentials.
struct ChainMap {
    ProjComplex X;
    ProjComplex Y;
    std::map<int, ElemMatrix> comps;  // degree -> matrix (Y rows, X cols)

    const ElemMatrix* comp(int n) const {
        auto it = comps.find(n);
        return it == comps.end() ? nullptr : &it->second;
    }
};

namespace detail {

inline ElemMatrix zero_matrix(std::size_t rows, std::size_t cols) {
    return ElemMatrix(rows, std::vector<Elem>(cols));
}

inline ElemMatrix mat_mul(const FiniteDimAlgebra& A, const ElemMatrix& M1, const ElemMatrix& M2) {
    std::size_t rows = M1.size();
    std::size_t inner = M2.size();
    std::size_t cols = inner ? M2[0].size() : 0;
    ElemMatrix out = zero_matrix(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t k = 0; k < inner; ++k) {
            if (k < M1[r].size() && M1[r][k].is_zero()) continue;
            for (std::size_t c = 0; c < cols; ++c) {
                if (M2[k][c].is_zero()) continue;
                out[r][c] = A.add(out[r][c], A.mul(M1[r][k], M2[k][c]));
            }
        }
    return out;
}

}  // namespace detail

inline bool is_chain_map(const ChainMap& f) {
    const FiniteDimAlgebra& A = f.X.algebra();
    for (int n = std::min(f.X.lo(), f.Y.lo()); n <= std::max(f.X.hi(), f.Y.hi()); ++n) {
        if (f.X.term(n).empty() || f.Y.term(n - 1).empty()) continue;
        std::size_t rows = f.Y.term(n - 1).size();
        std::size_t cols = f.X.term(n).size();
        ElemMatrix lhs = detail::zero_matrix(rows, cols);
        if (f.comp(n) && !f.Y.term(n).empty())
            lhs = detail::mat_mul(A, f.Y.diff(n), *f.comp(n));
        ElemMatrix rhs = detail::zero_matrix(rows, cols);
        if (f.comp(n - 1) && !f.X.term(n - 1).empty() && !f.X.diff(n).empty())
            rhs = detail::mat_mul(A, *f.comp(n - 1), f.X.diff(n));
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) {
                Elem dlt = A.add(lhs[r][c], A.scale(rhs[r][c], Scalar::of_int(A.field(), -1)));
                if (!dlt.is_zero()) return false;
            }
    }
    return true;
}

inline ChainMap identity_map(const ProjComplex& X) {
    ChainMap f{X, X, {}};
    const FiniteDimAlgebra& A = X.algebra();
    for (int n = X.lo(); n <= X.hi(); ++n) {
        std::size_t k = X.term(n).size();
        if (!k) continue;
        ElemMatrix m = detail::zero_matrix(k, k);
        for (std::size_t t = 0; t < k; ++t) m[t][t] = A.idempotent(X.term(n)[static_cast<std::size_t>(t)]);
        f.comps[n] = std::move(m);
    }
    return f;
}

/// Composition g o f for f : X -> Y, g : Y -> Z.
inline ChainMap compose_maps(const ChainMap& g, const ChainMap& f) {
    const FiniteDimAlgebra& A = f.X.algebra();
    ChainMap out{f.X, g.Y, {}};
    for (int n = std::max(f.X.lo(), g.Y.lo()); n <= std::min(f.X.hi(), g.Y.hi()); ++n) {
        const ElemMatrix* fm = f.comp(n);
        const ElemMatrix* gm = g.comp(n);
        if (!fm || !gm) continue;
        ElemMatrix m = detail::mat_mul(A, *gm, *fm);
        bool nonzero = false;
        for (const auto& row : m)
            for (const auto& x : row) nonzero = nonzero || !x.is_zero();
        if (nonzero) out.comps[n] = std::move(m);
    }
    return out;
}

/// Mapping cone of f : X -> Y: terms Y^n + X^{n-1} with the usual block
/// differential [[d_Y, f],[0, -d_X]].
inline ProjComplex cone(const ChainMap& f) {
    const FiniteDimAlgebra& A = f.X.algebra();
    if (!is_chain_map(f)) throw ComplexError("cone of a non-chain-map");
    const ProjComplex &X = f.X, &Y = f.Y;
    ProjComplex Xs = shift(X, 1);
    int lo = std::min(Y.empty() ? Xs.lo() : Y.lo(), Xs.empty() ? Y.lo() : Xs.lo());
    int hi = std::max(Y.empty() ? Xs.hi() : Y.hi(), Xs.empty() ? Y.hi() : Xs.hi());
    if (Y.empty() && Xs.empty()) return ProjComplex::zero(A);
    if (Y.empty()) {
        lo = Xs.lo();
        hi = Xs.hi();
    } else if (Xs.empty()) {
        lo = Y.lo();
        hi = Y.hi();
    }
    std::vector<std::vector<int>> terms;
    for (int n = lo; n <= hi; ++n) {
        std::vector<int> t = Y.term(n);
        for (int v : X.term(n - 1)) t.push_back(v);
        terms.push_back(std::move(t));
    }
    std::vector<ElemMatrix> diffs;
    for (int n = lo + 1; n <= hi; ++n) {
        std::size_t rows = terms[static_cast<std::size_t>(n - 1 - lo)].size();
        std::size_t cols = terms[static_cast<std::size_t>(n - lo)].size();
        ElemMatrix d = detail::zero_matrix(rows, cols);
        const ElemMatrix& dy = Y.diff(n);
        for (std::size_t r = 0; r < dy.size(); ++r)
            for (std::size_t c = 0; c < dy[r].size(); ++c) d[r][c] = dy[r][c];
        std::size_t roff = Y.term(n - 1).size();
        std::size_t coff = Y.term(n).size();
        if (const ElemMatrix* fm = f.comp(n - 1)) {
            // f^{n-1} : X^{n-1} -> Y^{n-1} sits in the upper-right block.
            for (std::size_t r = 0; r < fm->size(); ++r)
                for (std::size_t c = 0; c < (*fm)[r].size(); ++c) d[r][coff + c] = (*fm)[r][c];
        }
        const ElemMatrix& dx = X.diff(n - 1);
        for (std::size_t r = 0; r < dx.size(); ++r)
            for (std::size_t c = 0; c < dx[r].size(); ++c)
                d[roff + r][coff + c] = A.scale(dx[r][c], Scalar::of_int(A.field(), -1));
        diffs.push_back(std::move(d));
    }
    return ProjComplex(A, lo, std::move(terms), std::move(diffs));
}

namespace detail {

/// Flattened K-basis of a term: (summand, target vertex, block basis index).
struct TermBasis {
    explicit TermBasis(const FiniteDimAlgebra& A, const std::vector<int>& summands) {
        int n = A.vertex_count();
        int off = 0;
        for (std::size_t s = 0; s < summands.size(); ++s) {
            offsets.push_back(off);
            for (int j = 1; j <= n; ++j) off += A.block_dim(summands[s], j);
        }
        dim = off;
    }
    int block_offset(const FiniteDimAlgebra& A, std::size_t summand, int v, int j) const {
        int off = offsets[summand];
        for (int t = 1; t < j; ++t) off += A.block_dim(v, t);
        return off;
    }
    std::vector<int> offsets;
    int dim = 0;
};

/// Rows (images of source basis vectors) of the K-linear map given by an
/// element matrix acting by left multiplication.
inline std::vector<SparseVec> matrix_rows(const FiniteDimAlgebra& A, const ElemMatrix& M,
                                          const std::vector<int>& src,
                                          const std::vector<int>& tgt) {
    TermBasis sb(A, src), tb(A, tgt);
    std::vector<SparseVec> rows(static_cast<std::size_t>(sb.dim));
    int n = A.vertex_count();
    for (std::size_t c = 0; c < src.size(); ++c) {
        int v = src[c];
        for (int j = 1; j <= n; ++j) {
            int d = A.block_dim(v, j);
            for (int b = 0; b < d; ++b) {
                int srow = sb.block_offset(A, c, v, j) + b;
                SparseVec img;
                for (std::size_t r = 0; r < tgt.size(); ++r) {
                    const Elem& x = M[r][c];
                    if (x.is_zero()) continue;
                    // x * (basis vector b of e_v A e_j), coordinates in e_{tgt[r]} A e_j.
                    SparseVec part;
                    for (const auto& [bi, ci] : x.coeffs)
                        sparse_axpy(part, ci, A.structure(x.src, v, j, bi, b));
                    int toff = tb.block_offset(A, r, tgt[r], j);
                    for (const auto& [idx, cc] : part)
                        sparse_axpy(img, Scalar::one(A.field()), sparse_unit(toff + idx, cc));
                }
                rows[static_cast<std::size_t>(srow)] = std::move(img);
            }
        }
    }
    return rows;
}

}  // namespace detail

/// Per-degree homology dimensions dim ker d^n / im d^{n+1}, exact ranks.
inline std::vector<long> homology_dims(const ProjComplex& X) {
    if (X.empty()) return {};
    const FiniteDimAlgebra& A = X.algebra();
    std::vector<long> out;
    std::map<int, std::size_t> rank;
    for (int n = X.lo() + 1; n <= X.hi(); ++n)
        rank[n] = row_rank(detail::matrix_rows(A, X.diff(n), X.term(n), X.term(n - 1)));
    for (int n = X.lo(); n <= X.hi(); ++n) {
        long dim_n = X.term_dim(n);
        long r_n = n >= X.lo() + 1 ? static_cast<long>(rank[n]) : 0;
        long r_n1 = n + 1 <= X.hi() ? static_cast<long>(rank[n + 1]) : 0;
        out.push_back(dim_n - r_n - r_n1);
    }
    return out;
}

/// Signed sum over degrees of module Hom dimensions between the terms;
/// equals dim Hom in the homotopy category whenever the shifted Homs vanish.
inline long alternating_sum(const ProjComplex& Q, const ProjComplex& R) {
    const FiniteDimAlgebra& A = Q.algebra();
    long acc = 0;
    for (int r = Q.lo(); r <= Q.hi(); ++r)
        for (int s = R.lo(); s <= R.hi(); ++s) {
            long term = 0;
            for (int a : Q.term(r))
                for (int b : R.term(s)) term += A.block_dim(b, a);
            acc += ((r - s) % 2 == 0) ? term : -term;
        }
    return acc;
}

/// Chain maps X -> Y, the null-homotopic subspace, and canonical coset
/// representatives of Hom in the homotopy category.
class HomSpace {
public:
    HomSpace(const ProjComplex& X, const ProjComplex& Y)
        : X_(X), Y_(Y), A_(&X.algebra()), homotopies_(Pivot::Low), quotient_(Pivot::Low) {
        build_layout();
        solve_chain_maps();
        span_homotopies();
        build_quotient();
    }

    const ProjComplex& source() const { return X_; }
    const ProjComplex& target() const { return Y_; }
    long chain_map_dim() const { return static_cast<long>(chain_basis_.size()); }
    long homotopy_dim() const { return static_cast<long>(homotopies_.rank()); }
    long quotient_dim() const { return chain_map_dim() - homotopy_dim(); }

    /// Chain map for flattened unknown coordinates.
    ChainMap unflatten(const SparseVec& v) const {
        ChainMap f{X_, Y_, {}};
        for (const auto& [idx, c] : v) {
            const UnknownCoord& u = coords_[static_cast<std::size_t>(idx)];
            auto it = f.comps.find(u.degree);
            if (it == f.comps.end()) {
                std::size_t rows = Y_.term(u.degree).size();
                std::size_t cols = X_.term(u.degree).size();
                it = f.comps.emplace(u.degree, detail::zero_matrix(rows, cols)).first;
            }
            Elem& e = it->second[static_cast<std::size_t>(u.row)][static_cast<std::size_t>(u.col)];
            if (e.is_zero()) {
                e.src = Y_.term(u.degree)[static_cast<std::size_t>(u.row)];
                e.tgt = X_.term(u.degree)[static_cast<std::size_t>(u.col)];
            }
            sparse_axpy(e.coeffs, Scalar::one(A_->field()), sparse_unit(u.basis, c));
        }
        return f;
    }

    SparseVec flatten(const ChainMap& f) const {
        SparseVec v;
        for (std::size_t k = 0; k < coords_.size(); ++k) {
            const UnknownCoord& u = coords_[k];
            const ElemMatrix* m = f.comp(u.degree);
            if (!m) continue;
            const Elem& e = (*m)[static_cast<std::size_t>(u.row)][static_cast<std::size_t>(u.col)];
            Scalar c = sparse_get(e.coeffs, u.basis, A_->field());
            if (!c.is_zero()) v.emplace_back(static_cast<int>(k), c);
        }
        return v;
    }

    /// Coordinates of the homotopy class of a chain map in the canonical
    /// representative basis.
    SparseVec project(const ChainMap& f) const {
        SparseVec v = flatten(f);
        homotopies_.reduce(v);
        std::map<int, Scalar> used;
        quotient_.reduce_with_coeffs(v, used);
        if (!v.empty())
            throw ComplexError("vector outside the chain-map space; not a chain map?");
        SparseVec out;
        for (const auto& [piv, c] : used) {
            auto it = rep_of_pivot_.find(piv);
            out.emplace_back(it->second, c);
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    /// Canonical representative chain map of class k.
    ChainMap representative(int k) const {
        return unflatten(quotient_rows_[static_cast<std::size_t>(k)]);
    }

    bool is_null_homotopic(const ChainMap& f) const {
        SparseVec v = flatten(f);
        homotopies_.reduce(v);
        return v.empty();
    }

private:
    struct UnknownCoord {
        int degree, row, col, basis;
    };

    void build_layout() {
        for (int n = std::max(X_.lo(), Y_.lo()); n <= std::min(X_.hi(), Y_.hi()); ++n) {
            const auto& xs = X_.term(n);
            const auto& ys = Y_.term(n);
            for (std::size_t r = 0; r < ys.size(); ++r)
                for (std::size_t c = 0; c < xs.size(); ++c) {
                    int d = A_->block_dim(ys[r], xs[c]);
                    for (int b = 0; b < d; ++b)
                        coords_.push_back(UnknownCoord{n, static_cast<int>(r),
                                                       static_cast<int>(c), b});
                }
        }
        // Constraint coordinates: degree n with X^n and Y^{n-1} nonempty.
        for (int n = X_.lo(); n <= X_.hi() + 1; ++n) {
            if (X_.term(n).empty() || Y_.term(n - 1).empty()) continue;
            const auto& xs = X_.term(n);
            const auto& ys = Y_.term(n - 1);
            for (std::size_t r = 0; r < ys.size(); ++r)
                for (std::size_t c = 0; c < xs.size(); ++c) {
                    int d = A_->block_dim(ys[r], xs[c]);
                    for (int b = 0; b < d; ++b) {
                        constraint_offset_[key(n, static_cast<int>(r), static_cast<int>(c))
                                               .append("#")
                                               .append(std::to_string(b))] = constraint_dim_;
                        ++constraint_dim_;
                    }
                }
        }
    }

    static std::string key(int n, int r, int c) {
        return std::to_string(n) + ":" + std::to_string(r) + ":" + std::to_string(c);
    }

    int constraint_at(int n, int r, int c, int b) const {
        auto it = constraint_offset_.find(key(n, r, c) + "#" + std::to_string(b));
        return it == constraint_offset_.end() ? -1 : it->second;
    }

    void emit(SparseVec& out, int n, int r, int c, const Elem& x, const Scalar& scale) const {
        for (const auto& [idx, cc] : x.coeffs) {
            int at = constraint_at(n, r, c, idx);
            if (at >= 0) sparse_axpy(out, scale, sparse_unit(at, cc));
        }
    }

    void solve_chain_maps() {
        std::vector<SparseVec> rows;
        rows.reserve(coords_.size());
        for (const UnknownCoord& u : coords_) {
            Elem e{Y_.term(u.degree)[static_cast<std::size_t>(u.row)],
                   X_.term(u.degree)[static_cast<std::size_t>(u.col)],
                   sparse_unit(u.basis, Scalar::one(A_->field()))};
            SparseVec img;
            // d_Y^n o f^n lands in constraint degree n.
            const ElemMatrix& dy = Y_.diff(u.degree);
            for (std::size_t r1 = 0; r1 < dy.size(); ++r1) {
                const Elem& d = dy[r1][static_cast<std::size_t>(u.row)];
                if (d.is_zero()) continue;
                emit(img, u.degree, static_cast<int>(r1), u.col, A_->mul(d, e),
                     Scalar::one(A_->field()));
            }
            // f^n o d_X^{n+1} lands in constraint degree n+1, negatively.
            const ElemMatrix& dx = X_.diff(u.degree + 1);
            for (std::size_t c1 = 0; dx.size() && c1 < dx[0].size(); ++c1) {
                const Elem& d = dx[static_cast<std::size_t>(u.col)][c1];
                if (d.is_zero()) continue;
                emit(img, u.degree + 1, u.row, static_cast<int>(c1), A_->mul(e, d),
                     Scalar::of_int(A_->field(), -1));
            }
            rows.push_back(std::move(img));
        }
        chain_basis_ = left_kernel(rows, constraint_dim_, A_->field());
    }

    void span_homotopies() {
        // s^n : X^n -> Y^{n+1}; induced chain map d_Y s + s d_X.
        for (int n = std::max(X_.lo(), Y_.lo() - 1); n <= std::min(X_.hi(), Y_.hi() - 1); ++n) {
            const auto& xs = X_.term(n);
            const auto& ys = Y_.term(n + 1);
            for (std::size_t r = 0; r < ys.size(); ++r)
                for (std::size_t c = 0; c < xs.size(); ++c) {
                    int d = A_->block_dim(ys[r], xs[c]);
                    for (int b = 0; b < d; ++b) {
                        Elem e{ys[r], xs[c], sparse_unit(b, Scalar::one(A_->field()))};
                        SparseVec g;
                        const ElemMatrix& dy = Y_.diff(n + 1);
                        for (std::size_t r1 = 0; r1 < dy.size(); ++r1) {
                            const Elem& dd = dy[r1][r];
                            if (dd.is_zero()) continue;
                            add_unknown_coords(g, n, static_cast<int>(r1), static_cast<int>(c),
                                               A_->mul(dd, e));
                        }
                        const ElemMatrix& dx = X_.diff(n + 1);
                        for (std::size_t c1 = 0; dx.size() && c1 < dx[0].size(); ++c1) {
                            const Elem& dd = dx[c][c1];
                            if (dd.is_zero()) continue;
                            add_unknown_coords(g, n + 1, static_cast<int>(r), static_cast<int>(c1),
                                               A_->mul(e, dd));
                        }
                        homotopies_.insert(std::move(g));
                    }
                }
        }
        homotopies_.normalize();
    }

    void add_unknown_coords(SparseVec& out, int n, int r, int c, const Elem& x) const {
        if (x.is_zero()) return;
        for (const auto& [idx, cc] : x.coeffs) {
            int at = unknown_at(n, r, c, idx);
            if (at >= 0) sparse_axpy(out, Scalar::one(A_->field()), sparse_unit(at, cc));
        }
    }

    int unknown_at(int n, int r, int c, int b) const {
        for (std::size_t k = 0; k < coords_.size(); ++k) {
            const UnknownCoord& u = coords_[k];
            if (u.degree == n && u.row == r && u.col == c && u.basis == b)
                return static_cast<int>(k);
        }
        return -1;
    }

    void build_quotient() {
        for (const SparseVec& z : chain_basis_) {
            SparseVec v = z;
            homotopies_.reduce(v);
            quotient_.insert(std::move(v));
        }
        quotient_.normalize();
        int k = 0;
        for (const auto& [piv, row] : quotient_.rows()) {
            rep_of_pivot_[piv] = k++;
            quotient_rows_.push_back(row);
        }
    }

    ProjComplex X_;
    ProjComplex Y_;
    const FiniteDimAlgebra* A_;
    std::vector<UnknownCoord> coords_;
    std::map<std::string, int> constraint_offset_;
    int constraint_dim_ = 0;
    std::vector<SparseVec> chain_basis_;
    RowEchelon homotopies_;
    RowEchelon quotient_;
    std::vector<SparseVec> quotient_rows_;
    std::map<int, int> rep_of_pivot_;
};

inline HomSpace hom_space(const ProjComplex& X, const ProjComplex& Y) { return HomSpace(X, Y); }

}  // namespace bqa
