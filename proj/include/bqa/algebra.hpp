#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bqa/expr.hpp"
#include "bqa/linalg.hpp"
#include "bqa/parallel.hpp"
#include "bqa/presentation.hpp"
#include "bqa/quiver.hpp"

namespace bqa {

struct AlgebraError : Error {
    using Error::Error;
};

/// Finite-dimensional quotient of the path algebra KQ by (relations + all
/// paths of length >= L), with a normal-form basis per vertex pair.
///
/// The span of { p * rel * q } truncated below length L is echelonized
/// blockwise, eliminating the longest words first; the surviving words are
/// the basis and every pivot word carries a stored normal form. Once a
/// stabilization check certifies that length-L paths already vanish, this
/// quotient is the bound quiver algebra itself.
class FiniteDimAlgebra {
public:
    /// Element of one (source, target) block in basis coordinates.
    struct Elem {
        int src = 0;
        int tgt = 0;
        SparseVec coeffs;
        bool is_zero() const { return coeffs.empty(); }
    };

    FiniteDimAlgebra(Presentation P, int bound) : pres_(std::move(P)), L_(bound) {
        n_ = pres_.quiver.vertex_count();
        validate_input();
        enumerate_words();
        echelonize_ideal();
        index_bases();
        build_structure_constants();
    }

    const Presentation& pres() const { return pres_; }
    const Quiver& quiver() const { return pres_.quiver; }
    const FieldDescriptor& field() const { return pres_.field; }
    int bound() const { return L_; }
    int vertex_count() const { return n_; }

    const std::vector<Path>& basis(int i, int j) const { return blocks_[bix(i, j)].basis; }
    int block_dim(int i, int j) const { return static_cast<int>(basis(i, j).size()); }

    long total_dim() const {
        long d = 0;
        for (int i = 1; i <= n_; ++i)
            for (int j = 1; j <= n_; ++j) d += block_dim(i, j);
        return d;
    }

    /// Entry (i, j) is dim e_i A e_j.
    IntMatrix cartan_matrix() const {
        IntMatrix c(n_, std::vector<long>(n_, 0));
        for (int i = 1; i <= n_; ++i)
            for (int j = 1; j <= n_; ++j) c[i - 1][j - 1] = block_dim(i, j);
        return c;
    }

    Elem zero(int i, int j) const { return Elem{i, j, {}}; }

    Elem idempotent(int i) const { return reduce_word(Path::trivial(i)); }

    Elem arrow_elem(int arrow_id) const {
        return reduce_word(Path::of(pres_.quiver, {arrow_id}));
    }

    /// Normal form of a path of this quiver; zero for length >= bound.
    Elem reduce_word(const Path& w) const {
        Elem e{w.source(), w.target(), {}};
        if (static_cast<int>(w.length()) >= L_) return e;
        if (w.source() < 1 || w.source() > n_ || w.target() < 1 || w.target() > n_)
            throw AlgebraError("path endpoints outside this algebra's quiver");
        for (int id : w.arrow_ids())
            if (id < 0 || id >= static_cast<int>(pres_.quiver.arrows().size()))
                throw AlgebraError("path uses arrows outside this algebra's quiver");
        const Block& blk = blocks_[bix(w.source(), w.target())];
        auto bit = blk.basis_index.find(w);
        if (bit != blk.basis_index.end()) {
            e.coeffs = sparse_unit(bit->second, Scalar::one(pres_.field));
            return e;
        }
        auto pit = blk.pivot_nf.find(w);
        if (pit == blk.pivot_nf.end())
            throw AlgebraError("path does not live on this algebra's quiver: " +
                               w.str(pres_.quiver));
        e.coeffs = pit->second;
        return e;
    }

    /// Normal form of a parsed expression; the zero element reports the
    /// expression's block when it has one.
    Elem reduce(const PathExpr& x) const {
        if (x.is_zero()) return Elem{};
        Elem acc{x.source(), x.target(), {}};
        for (const auto& [w, c] : x.terms()) {
            Elem nf = reduce_word(w);
            sparse_axpy(acc.coeffs, c, nf.coeffs);
        }
        return acc;
    }

    Elem reduce_str(const std::string& text) const { return reduce(pres_.parse(text)); }

    PathExpr to_expr(const Elem& x) const {
        PathExpr out;
        const std::vector<Path>& bs = basis(x.src, x.tgt);
        for (const auto& [idx, c] : x.coeffs) out.add_term(bs[static_cast<std::size_t>(idx)], c);
        return out;
    }

    std::string str(const Elem& x) const { return expr_to_string(to_expr(x), pres_.quiver); }

    Elem add(Elem a, const Elem& b) const {
        if (b.is_zero()) return a;
        if (a.is_zero()) return b;
        if (a.src != b.src || a.tgt != b.tgt) throw AlgebraError("mixed-block sum");
        sparse_axpy(a.coeffs, Scalar::one(pres_.field), b.coeffs);
        return a;
    }

    Elem scale(Elem a, const Scalar& c) const {
        sparse_scale(a.coeffs, c);
        return a;
    }

    /// Product in the algebra; blocks that do not compose multiply to zero.
    Elem mul(const Elem& a, const Elem& b) const {
        if (a.is_zero() || b.is_zero()) return Elem{};
        if (a.tgt != b.src) return Elem{};
        Elem out{a.src, b.tgt, {}};
        int djk = block_dim(a.tgt, b.tgt);
        const auto& table = sc_[scix(a.src, a.tgt, b.tgt)];
        for (const auto& [bi, ci] : a.coeffs)
            for (const auto& [bj, cj] : b.coeffs)
                sparse_axpy(out.coeffs, ci * cj, table[static_cast<std::size_t>(bi) * djk + bj]);
        return out;
    }

    Elem power(const Elem& a, unsigned k) const {
        if (k == 1) return a;
        if (a.src != a.tgt) throw AlgebraError("power of a non-cycle element");
        Elem acc = idempotent(a.src);
        for (unsigned t = 0; t < k; ++t) acc = mul(acc, a);
        return acc;
    }

    /// Product of two basis words as coordinates in the target block.
    const SparseVec& structure(int i, int j, int k, int bi, int bj) const {
        int djk = block_dim(j, k);
        return sc_[scix(i, j, k)][static_cast<std::size_t>(bi) * djk + bj];
    }

    /// Rows of u |-> x*u on e_{x.tgt} A e_j, in coordinates of e_{x.src} A e_j.
    std::vector<SparseVec> left_mult_rows(const Elem& x, int j) const {
        std::vector<SparseVec> rows;
        int d = block_dim(x.tgt, j);
        rows.reserve(static_cast<std::size_t>(d));
        for (int t = 0; t < d; ++t) {
            SparseVec img;
            for (const auto& [bi, c] : x.coeffs)
                sparse_axpy(img, c, structure(x.src, x.tgt, j, bi, t));
            rows.push_back(std::move(img));
        }
        return rows;
    }

    /// Rows of u |-> u*x on e_i A e_{x.src}, in coordinates of e_i A e_{x.tgt}.
    std::vector<SparseVec> right_mult_rows(const Elem& x, int i) const {
        std::vector<SparseVec> rows;
        int d = block_dim(i, x.src);
        rows.reserve(static_cast<std::size_t>(d));
        for (int t = 0; t < d; ++t) {
            SparseVec img;
            for (const auto& [bj, c] : x.coeffs)
                sparse_axpy(img, c, structure(i, x.src, x.tgt, t, bj));
            rows.push_back(std::move(img));
        }
        return rows;
    }

private:
    struct Block {
        std::vector<Path> words;  // all paths of length < L, length-lex order
        std::unordered_map<Path, int, PathHash> word_pos;
        std::vector<Path> basis;
        std::unordered_map<Path, int, PathHash> basis_index;
        std::unordered_map<Path, SparseVec, PathHash> pivot_nf;
        std::vector<SparseVec> gens;
        RowEchelon ech{Pivot::High};
    };

    int bix(int i, int j) const { return (i - 1) * n_ + (j - 1); }
    std::size_t scix(int i, int j, int k) const {
        return (static_cast<std::size_t>(bix(i, j)) * n_) + (k - 1);
    }

    void validate_input() {
        if (L_ < 1) throw AlgebraError("length bound must be at least 1");
        for (const RelationElement& r : pres_.relations) {
            for (const auto& [w, c] : r.elem.terms()) {
                (void)c;
                if (w.length() < 2)
                    throw AlgebraError("non-admissible relation " + r.label +
                                       ": word of length < 2");
            }
        }
    }

    void enumerate_words() {
        blocks_.assign(static_cast<std::size_t>(n_) * n_, Block{});
        for (int i = 1; i <= n_; ++i) {
            for (const Path& p : enumerate_from(pres_.quiver, i, L_ - 1))
                blocks_[bix(i, p.target())].words.push_back(p);
        }
        for (Block& b : blocks_) {
            std::sort(b.words.begin(), b.words.end());
            for (std::size_t k = 0; k < b.words.size(); ++k)
                b.word_pos.emplace(b.words[k], static_cast<int>(k));
        }
    }

    // Spanning set of the ideal image below length L: every p * rel * q whose
    // shortest term still fits under the bound.
    void echelonize_ideal() {
        std::vector<std::vector<Path>> to(static_cast<std::size_t>(n_) + 1);
        std::vector<std::vector<Path>> from(static_cast<std::size_t>(n_) + 1);
        for (int i = 1; i <= n_; ++i) {
            for (const Path& p : enumerate_from(pres_.quiver, i, L_ - 1)) {
                from[static_cast<std::size_t>(i)].push_back(p);
                to[static_cast<std::size_t>(p.target())].push_back(p);
            }
        }
        for (const RelationElement& r : pres_.relations) {
            int s = r.elem.source(), t = r.elem.target();
            int mindeg = L_;
            for (const auto& [w, c] : r.elem.terms())
                mindeg = std::min(mindeg, static_cast<int>(w.length()));
            for (const Path& p : to[static_cast<std::size_t>(s)]) {
                int room = L_ - 1 - mindeg - static_cast<int>(p.length());
                if (room < 0) continue;
                for (const Path& q : from[static_cast<std::size_t>(t)]) {
                    if (static_cast<int>(q.length()) > room) continue;
                    Block& blk = blocks_[bix(p.source(), q.target())];
                    SparseVec row;
                    for (const auto& [w, c] : r.elem.terms()) {
                        if (p.length() + w.length() + q.length() >= static_cast<std::size_t>(L_))
                            continue;
                        Path full = Path::concat_unchecked(Path::concat_unchecked(p, w), q);
                        SparseVec unit = sparse_unit(blk.word_pos.at(full), c);
                        sparse_axpy(row, Scalar::one(pres_.field), unit);
                    }
                    if (!row.empty()) blk.gens.push_back(std::move(row));
                }
            }
        }
        parallel_for(blocks_.size(), [&](std::size_t b) {
            Block& blk = blocks_[b];
            for (SparseVec& g : blk.gens) blk.ech.insert(std::move(g));
            blk.gens.clear();
            blk.ech.normalize();
        });
    }

    void index_bases() {
        for (Block& blk : blocks_) {
            std::vector<int> word_to_basis(blk.words.size(), -1);
            for (std::size_t k = 0; k < blk.words.size(); ++k) {
                if (blk.ech.is_pivot(static_cast<int>(k))) continue;
                word_to_basis[k] = static_cast<int>(blk.basis.size());
                blk.basis.push_back(blk.words[k]);
                blk.basis_index.emplace(blk.words[k], word_to_basis[k]);
            }
            for (const auto& [piv, row] : blk.ech.rows()) {
                // row = pivot word + tail on non-pivot words; NF = -tail.
                SparseVec nf;
                for (const auto& [idx, c] : row) {
                    if (idx == piv) continue;
                    nf.emplace_back(word_to_basis[static_cast<std::size_t>(idx)], -c);
                }
                std::sort(nf.begin(), nf.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                blk.pivot_nf.emplace(blk.words[static_cast<std::size_t>(piv)], std::move(nf));
            }
        }
        // Admissibility keeps trivial paths and arrows out of the ideal span.
        for (int i = 1; i <= n_; ++i)
            if (!blocks_[bix(i, i)].basis_index.count(Path::trivial(i)))
                throw AlgebraError("trivial path eliminated; ideal is not admissible");
        for (const Arrow& a : pres_.quiver.arrows())
            if (!blocks_[bix(a.src, a.tgt)].basis_index.count(Path::of(pres_.quiver, {a.id})))
                throw AlgebraError("arrow eliminated; ideal is not admissible");
        // Construction scratch: the word lists and echelon rows are no
        // longer needed once the normal-form tables exist.
        for (Block& blk : blocks_) {
            blk.words.clear();
            blk.words.shrink_to_fit();
            blk.word_pos.clear();
            blk.ech = RowEchelon(Pivot::High);
        }
    }

    void build_structure_constants() {
        sc_.assign(static_cast<std::size_t>(n_) * n_ * n_, {});
        std::vector<std::array<int, 3>> triples;
        for (int i = 1; i <= n_; ++i)
            for (int j = 1; j <= n_; ++j)
                for (int k = 1; k <= n_; ++k) triples.push_back({i, j, k});
        parallel_for(triples.size(), [&](std::size_t t) {
            auto [i, j, k] = triples[t];
            const std::vector<Path>& bij = basis(i, j);
            const std::vector<Path>& bjk = basis(j, k);
            auto& table = sc_[scix(i, j, k)];
            table.assign(bij.size() * bjk.size(), SparseVec{});
            const Block& target = blocks_[bix(i, k)];
            for (std::size_t u = 0; u < bij.size(); ++u) {
                for (std::size_t v = 0; v < bjk.size(); ++v) {
                    Path w = Path::concat_unchecked(bij[u], bjk[v]);
                    if (static_cast<int>(w.length()) >= L_) continue;
                    auto bit = target.basis_index.find(w);
                    if (bit != target.basis_index.end()) {
                        table[u * bjk.size() + v] =
                            sparse_unit(bit->second, Scalar::one(pres_.field));
                    } else {
                        table[u * bjk.size() + v] = target.pivot_nf.at(w);
                    }
                }
            }
        });
    }

    Presentation pres_;
    int L_;
    int n_ = 0;
    std::vector<Block> blocks_;
    std::vector<std::vector<SparseVec>> sc_;
};

/// Convenience: the recommended truncation bound for the built-in families.
inline int default_bound(int m) { return 4 * m + 2; }

/// Builds the truncated quotient; requires the bound to cover every relation
/// word. (The raw constructor tolerates lower bounds, which the
/// stabilization check uses when probing unstable truncations.)
inline FiniteDimAlgebra quotient_algebra(const Presentation& P, int L) {
    int maxdeg = 0;
    for (const RelationElement& r : P.relations)
        for (const auto& [w, c] : r.elem.terms())
            maxdeg = std::max(maxdeg, static_cast<int>(w.length()));
    if (L < maxdeg)
        throw AlgebraError("length bound " + std::to_string(L) + " below relation degree " +
                           std::to_string(maxdeg));
    return FiniteDimAlgebra(P, L);
}

struct StabilizationReport {
    bool dims_match = false;
    bool radical_vanishes = false;
    IntMatrix dims_at_L;
    IntMatrix dims_at_L1;
    bool stable() const { return dims_match && radical_vanishes; }
};

/// Certifies that the truncation bound saw the whole algebra: component
/// dimensions agree at L and L+1 and every length-L path vanishes at bound
/// L+1, i.e. rad^L = 0 there.
inline StabilizationReport stabilization_check(const Presentation& P, int L) {
    StabilizationReport rep;
    FiniteDimAlgebra at_L(P, L);
    FiniteDimAlgebra at_L1(P, L + 1);
    rep.dims_at_L = at_L.cartan_matrix();
    rep.dims_at_L1 = at_L1.cartan_matrix();
    rep.dims_match = rep.dims_at_L == rep.dims_at_L1;
    rep.radical_vanishes = true;
    for (int i = 1; i <= P.quiver.vertex_count() && rep.radical_vanishes; ++i) {
        for (const Path& p : enumerate_from(P.quiver, i, L)) {
            if (static_cast<int>(p.length()) != L) continue;
            if (!at_L1.reduce_word(p).is_zero()) {
                rep.radical_vanishes = false;
                break;
            }
        }
    }
    return rep;
}

struct CatalogEntryReport {
    std::string label;
    bool parsed = false;
    std::string parse_error;
    int count = 0;
    int expected_dim = 0;
    bool independent = false;
    bool ok = false;
};

struct CatalogReport {
    std::vector<CatalogEntryReport> entries;
    bool all_ok = true;
};

/// Checks that each catalog entry is a basis of its component: expressions
/// parse, land in the right block (or row), are linearly independent, and
/// count exactly the component dimension.
inline CatalogReport verify_basis_catalog(const FiniteDimAlgebra& A,
                                          const std::vector<CatalogEntry>& catalog) {
    CatalogReport report;
    int n = A.vertex_count();
    for (const CatalogEntry& entry : catalog) {
        CatalogEntryReport er;
        er.label = entry.label;
        er.count = static_cast<int>(entry.exprs.size());
        std::vector<int> offset(static_cast<std::size_t>(n) + 1, 0);
        if (entry.col > 0) {
            er.expected_dim = A.block_dim(entry.row, entry.col);
        } else {
            int off = 0;
            for (int j = 1; j <= n; ++j) {
                offset[static_cast<std::size_t>(j)] = off;
                off += A.block_dim(entry.row, j);
            }
            er.expected_dim = off;
        }
        RowEchelon ech(Pivot::Low);
        er.parsed = true;
        er.independent = true;
        for (const std::string& text : entry.exprs) {
            FiniteDimAlgebra::Elem e;
            try {
                e = A.reduce_str(text);
            } catch (const Error& ex) {
                er.parsed = false;
                er.parse_error = text + ": " + ex.what();
                break;
            }
            if (e.is_zero()) {
                er.independent = false;
                continue;
            }
            bool in_component = entry.col > 0
                                    ? (e.src == entry.row && e.tgt == entry.col)
                                    : (e.src == entry.row);
            if (!in_component) {
                er.parsed = false;
                er.parse_error = text + ": lies outside the declared component";
                break;
            }
            SparseVec v = e.coeffs;
            if (entry.col == 0) {
                for (auto& [idx, c] : v) idx += offset[static_cast<std::size_t>(e.tgt)];
            }
            if (!ech.insert(std::move(v))) er.independent = false;
        }
        er.ok = er.parsed && er.independent && er.count == er.expected_dim &&
                static_cast<int>(ech.rank()) == er.expected_dim;
        report.all_ok = report.all_ok && er.ok;
        report.entries.push_back(std::move(er));
    }
    return report;
}

}  // namespace bqa
