#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bqa/algebra.hpp"
#include "bqa/linalg.hpp"

namespace bqa {

/// Linear functional on the algebra whose associated bilinear form
/// (x, y) |-> f(xy) is symmetric and nondegenerate; evidence that the
/// algebra is isomorphic to its dual as a bimodule.
struct SymmetricFormCertificate {
    std::vector<Scalar> functional;  // value on each global basis element
    Scalar gram_det;                 // exact, nonzero
};

enum class FormSearchStatus { Found, NoneExhaustive, Indeterminate };

struct FormSearchResult {
    FormSearchStatus status = FormSearchStatus::Indeterminate;
    std::optional<SymmetricFormCertificate> certificate;
    int attempts_used = 0;
    int trace_space_dim = 0;
};

namespace detail {

/// Flattened basis indexing: blocks (i, j) in lexicographic order.
struct GlobalIndex {
    explicit GlobalIndex(const FiniteDimAlgebra& A) {
        int n = A.vertex_count();
        offsets.assign(static_cast<std::size_t>(n) * n + 1, 0);
        int off = 0;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                offsets[static_cast<std::size_t>((i - 1) * n + (j - 1))] = off;
                off += A.block_dim(i, j);
            }
        offsets.back() = off;
        dim = off;
    }
    int of(const FiniteDimAlgebra& A, int i, int j, int b) const {
        return offsets[static_cast<std::size_t>((i - 1) * A.vertex_count() + (j - 1))] + b;
    }
    std::vector<int> offsets;
    int dim = 0;
};

inline Scalar eval_functional(const std::vector<Scalar>& f, const SparseVec& coords, int offset,
                              const FieldDescriptor& field) {
    Scalar acc = Scalar::zero(field);
    for (const auto& [idx, c] : coords) acc += c * f[static_cast<std::size_t>(offset + idx)];
    return acc;
}

/// Basis of { f : f(ab) = f(ba) for all basis pairs a, b }.
inline std::vector<SparseVec> trace_form_space(const FiniteDimAlgebra& A, const GlobalIndex& gx) {
    int n = A.vertex_count();
    std::vector<SparseVec> equations;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                // a in (i,j), b in (j,k): contributes f(ab); ba exists iff k == i.
                for (int bi = 0; bi < A.block_dim(i, j); ++bi)
                    for (int bj = 0; bj < A.block_dim(j, k); ++bj) {
                        SparseVec eq;
                        const SparseVec& ab = A.structure(i, j, k, bi, bj);
                        for (const auto& [idx, c] : ab)
                            sparse_axpy(eq, Scalar::one(A.field()),
                                        sparse_unit(gx.of(A, i, k, idx), c));
                        if (k == i) {
                            const SparseVec& ba = A.structure(j, i, j, bj, bi);
                            for (const auto& [idx, c] : ba)
                                sparse_axpy(eq, Scalar::of_int(A.field(), -1),
                                            sparse_unit(gx.of(A, j, j, idx), c));
                        }
                        if (!eq.empty()) equations.push_back(std::move(eq));
                    }
            }
    // Solutions f are the null space of the equation matrix over f-space.
    RowEchelon ech(Pivot::Low);
    for (auto& eq : equations) ech.insert(std::move(eq));
    ech.normalize();
    std::vector<SparseVec> basis;
    for (int c = 0; c < gx.dim; ++c) {
        if (ech.is_pivot(c)) continue;
        SparseVec v = sparse_unit(c, Scalar::one(A.field()));
        for (const auto& [piv, row] : ech.rows()) {
            Scalar coef = sparse_get(row, c, A.field());
            if (!coef.is_zero()) sparse_axpy(v, Scalar::one(A.field()), sparse_unit(piv, -coef));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<std::vector<Scalar>> gram_matrix(const FiniteDimAlgebra& A,
                                                    const GlobalIndex& gx,
                                                    const std::vector<Scalar>& f) {
    int n = A.vertex_count();
    std::vector<std::vector<Scalar>> g(
        static_cast<std::size_t>(gx.dim),
        std::vector<Scalar>(static_cast<std::size_t>(gx.dim), Scalar::zero(A.field())));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int bi = 0; bi < A.block_dim(i, j); ++bi)
                    for (int bj = 0; bj < A.block_dim(j, k); ++bj) {
                        const SparseVec& ab = A.structure(i, j, k, bi, bj);
                        if (ab.empty()) continue;
                        int row = gx.of(A, i, j, bi);
                        int col = gx.of(A, j, k, bj);
                        g[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                            eval_functional(f, ab, gx.offsets[static_cast<std::size_t>(
                                                   (i - 1) * n + (k - 1))],
                                            A.field());
                    }
    return g;
}

}  // namespace detail

/// Searches for a symmetrizing form: solves f(ab) = f(ba) exactly, then
/// samples functionals from the solution space until one has nonzero Gram
/// determinant. Exhausts the space instead when it is small enough
/// (dimension <= 3 over F_p, p <= 101); otherwise the answer after all
/// attempts is Indeterminate, never a claim of non-symmetry.
inline FormSearchResult symmetric_form_search(const FiniteDimAlgebra& A, int attempts,
                                              std::uint64_t seed) {
    if (attempts < 1) throw AlgebraError("attempts must be at least 1");
    detail::GlobalIndex gx(A);
    std::vector<SparseVec> space = detail::trace_form_space(A, gx);
    FormSearchResult result;
    result.trace_space_dim = static_cast<int>(space.size());
    if (space.empty()) {
        result.status = FormSearchStatus::NoneExhaustive;
        return result;
    }

    auto try_functional = [&](const std::vector<Scalar>& coeffs) -> bool {
        std::vector<Scalar> f(static_cast<std::size_t>(gx.dim), Scalar::zero(A.field()));
        for (std::size_t s = 0; s < space.size(); ++s)
            for (const auto& [idx, c] : space[s])
                f[static_cast<std::size_t>(idx)] += coeffs[s] * c;
        auto g = detail::gram_matrix(A, gx, f);
        Scalar det = dense_det(std::move(g), A.field());
        if (det.is_zero()) return false;
        result.certificate = SymmetricFormCertificate{std::move(f), det};
        result.status = FormSearchStatus::Found;
        return true;
    };

    bool exhaustible = A.field().kind == FieldKind::Prime && A.field().p <= 101 &&
                       space.size() <= 3;
    if (exhaustible) {
        // Scaling leaves degeneracy unchanged: normalize the first nonzero
        // coordinate to 1 and sweep the rest.
        std::vector<Scalar> coeffs(space.size(), Scalar::zero(A.field()));
        std::uint64_t p = A.field().p;
        for (std::size_t lead = 0; lead < space.size(); ++lead) {
            coeffs.assign(space.size(), Scalar::zero(A.field()));
            coeffs[lead] = Scalar::one(A.field());
            std::size_t tail = space.size() - lead - 1;
            std::uint64_t combos = 1;
            for (std::size_t t = 0; t < tail; ++t) combos *= p;
            for (std::uint64_t mask = 0; mask < combos; ++mask) {
                std::uint64_t rest = mask;
                for (std::size_t t = 0; t < tail; ++t) {
                    coeffs[lead + 1 + t] = Scalar::of_int(A.field(), static_cast<long>(rest % p));
                    rest /= p;
                }
                ++result.attempts_used;
                if (try_functional(coeffs)) return result;
            }
        }
        result.status = FormSearchStatus::NoneExhaustive;
        return result;
    }

    for (int attempt = 0; attempt < attempts; ++attempt) {
        std::vector<Scalar> coeffs;
        coeffs.reserve(space.size());
        bool nonzero = false;
        for (std::size_t s = 0; s < space.size(); ++s) {
            Scalar c = sample_scalar(A.field(),
                                     seed * 0x9e3779b9ULL + attempt * 1315423911ULL + s);
            if (!c.is_zero()) nonzero = true;
            coeffs.push_back(c);
        }
        if (!nonzero) coeffs[0] = Scalar::one(A.field());
        ++result.attempts_used;
        if (try_functional(coeffs)) return result;
    }
    result.status = FormSearchStatus::Indeterminate;
    return result;
}

/// Independent certificate checker: recomputes every product by word
/// concatenation and reduction (not the memoized tables), sweeps
/// f(ab) = f(ba) over all basis pairs, and re-evaluates the Gram
/// determinant from scratch.
inline bool check_symmetric_certificate(const FiniteDimAlgebra& A,
                                        const SymmetricFormCertificate& cert) {
    detail::GlobalIndex gx(A);
    if (static_cast<int>(cert.functional.size()) != gx.dim) return false;
    if (cert.gram_det.is_zero()) return false;
    int n = A.vertex_count();

    auto value_of = [&](const FiniteDimAlgebra::Elem& e) {
        Scalar acc = Scalar::zero(A.field());
        if (e.is_zero()) return acc;
        int off = gx.offsets[static_cast<std::size_t>((e.src - 1) * n + (e.tgt - 1))];
        for (const auto& [idx, c] : e.coeffs)
            acc += c * cert.functional[static_cast<std::size_t>(off + idx)];
        return acc;
    };
    auto product = [&](int i, int j, int k, int bi, int bj) {
        Path w = Path::concat_unchecked(A.basis(i, j)[static_cast<std::size_t>(bi)],
                                        A.basis(j, k)[static_cast<std::size_t>(bj)]);
        return A.reduce_word(w);
    };

    std::vector<std::vector<Scalar>> gram(
        static_cast<std::size_t>(gx.dim),
        std::vector<Scalar>(static_cast<std::size_t>(gx.dim), Scalar::zero(A.field())));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int bi = 0; bi < A.block_dim(i, j); ++bi)
                    for (int bj = 0; bj < A.block_dim(j, k); ++bj) {
                        Scalar fab = value_of(product(i, j, k, bi, bj));
                        if (k == i) {
                            Scalar fba = value_of(product(j, i, j, bj, bi));
                            if (fab != fba) return false;
                        } else if (!fab.is_zero()) {
                            // ba is zero by block mismatch, so f(ab) must vanish.
                            return false;
                        }
                        gram[static_cast<std::size_t>(gx.of(A, i, j, bi))]
                            [static_cast<std::size_t>(gx.of(A, j, k, bj))] = fab;
                    }
    Scalar det = dense_det(gram, A.field());
    return det == cert.gram_det && !det.is_zero();
}

}  // namespace bqa
