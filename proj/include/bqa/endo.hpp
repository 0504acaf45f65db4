#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bqa/complexes.hpp"
#include "bqa/presentation.hpp"

namespace bqa {

struct EndoError : Error {
    using Error::Error;
};

/// Endomorphism algebra of a direct sum of complexes T_1 + ... + T_n in the
/// homotopy category: block (i, j) is Hom(T_j, T_i) by homotopy classes,
/// multiplication is composition of canonical representatives.
class EndoAlgebra {
public:
    struct Elem {
        int i = 0;
        int j = 0;
        SparseVec coeffs;
        bool is_zero() const { return coeffs.empty(); }
    };

    EndoAlgebra(const FiniteDimAlgebra& A, std::vector<ProjComplex> summands)
        : A_(&A), summands_(std::move(summands)) {
        n_ = static_cast<int>(summands_.size());
        if (n_ < 1) throw EndoError("endomorphism algebra of an empty sum");
        hom_.reserve(static_cast<std::size_t>(n_) * n_);
        for (int i = 1; i <= n_; ++i)
            for (int j = 1; j <= n_; ++j)
                hom_.emplace_back(summands_[static_cast<std::size_t>(j - 1)],
                                  summands_[static_cast<std::size_t>(i - 1)]);
        build_idempotents();
        build_structure();
    }

    const FiniteDimAlgebra& base() const { return *A_; }
    int parts() const { return n_; }
    const std::vector<ProjComplex>& summands() const { return summands_; }
    const HomSpace& hom(int i, int j) const { return hom_[static_cast<std::size_t>(bix(i, j))]; }

    int block_dim(int i, int j) const { return static_cast<int>(hom(i, j).quotient_dim()); }

    long total_dim() const {
        long d = 0;
        for (int i = 1; i <= n_; ++i)
            for (int j = 1; j <= n_; ++j) d += block_dim(i, j);
        return d;
    }

    IntMatrix cartan_matrix() const {
        IntMatrix c(n_, std::vector<long>(n_, 0));
        for (int i = 1; i <= n_; ++i)
            for (int j = 1; j <= n_; ++j) c[i - 1][j - 1] = block_dim(i, j);
        return c;
    }

    Elem zero(int i, int j) const { return Elem{i, j, {}}; }

    const Elem& idempotent(int i) const { return idems_[static_cast<std::size_t>(i - 1)]; }

    /// Class of a chain map T_j -> T_i.
    Elem from_chain_map(int i, int j, const ChainMap& f) const {
        if (!is_chain_map(f)) throw EndoError("not a chain map");
        return Elem{i, j, hom(i, j).project(f)};
    }

    /// Class of the degree-0 one-entry module map T_j -> T_i given by x.
    Elem module_map(int i, int j, const FiniteDimAlgebra::Elem& x) const {
        const ProjComplex& X = summands_[static_cast<std::size_t>(j - 1)];
        const ProjComplex& Y = summands_[static_cast<std::size_t>(i - 1)];
        if (X.term(0).size() != 1 || Y.term(0).size() != 1)
            throw EndoError("module_map needs single-summand degree-0 terms");
        if (x.src != Y.term(0)[0] || x.tgt != X.term(0)[0])
            throw EndoError("module_map element lies in the wrong component");
        ChainMap f{X, Y, {}};
        f.comps[0] = ElemMatrix{{x}};
        return from_chain_map(i, j, f);
    }

    ChainMap representative(int i, int j, int k) const { return hom(i, j).representative(k); }

    Elem add(Elem a, const Elem& b) const {
        if (b.is_zero()) return a;
        if (a.is_zero()) return b;
        if (a.i != b.i || a.j != b.j) throw EndoError("mixed-block sum");
        sparse_axpy(a.coeffs, Scalar::one(A_->field()), b.coeffs);
        return a;
    }

    Elem scale(Elem a, const Scalar& c) const {
        sparse_scale(a.coeffs, c);
        return a;
    }

    /// Product in the algebra; blocks that do not compose multiply to zero.
    Elem mul(const Elem& a, const Elem& b) const {
        if (a.is_zero() || b.is_zero()) return Elem{};
        if (a.j != b.i) return Elem{};
        Elem out{a.i, b.j, {}};
        int djk = block_dim(a.j, b.j);
        const auto& table = sc_[scix(a.i, a.j, b.j)];
        for (const auto& [bi, ci] : a.coeffs)
            for (const auto& [bj, cj] : b.coeffs)
                sparse_axpy(out.coeffs, ci * cj, table[static_cast<std::size_t>(bi) * djk + bj]);
        return out;
    }

    const SparseVec& structure(int i, int j, int k, int bi, int bj) const {
        int djk = block_dim(j, k);
        return sc_[scix(i, j, k)][static_cast<std::size_t>(bi) * djk + bj];
    }

private:
    int bix(int i, int j) const { return (i - 1) * n_ + (j - 1); }
    std::size_t scix(int i, int j, int k) const {
        return static_cast<std::size_t>(bix(i, j)) * n_ + (k - 1);
    }

    void build_idempotents() {
        for (int i = 1; i <= n_; ++i) {
            ChainMap id = identity_map(summands_[static_cast<std::size_t>(i - 1)]);
            idems_.push_back(Elem{i, i, hom(i, i).project(id)});
        }
    }

    void build_structure() {
        sc_.assign(static_cast<std::size_t>(n_) * n_ * n_, {});
        for (int i = 1; i <= n_; ++i)
            for (int j = 1; j <= n_; ++j)
                for (int k = 1; k <= n_; ++k) {
                    int dij = block_dim(i, j), djk = block_dim(j, k);
                    auto& table = sc_[scix(i, j, k)];
                    table.assign(static_cast<std::size_t>(dij) * djk, SparseVec{});
                    for (int u = 0; u < dij; ++u) {
                        ChainMap gu = representative(i, j, u);
                        for (int v = 0; v < djk; ++v) {
                            ChainMap fv = representative(j, k, v);
                            table[static_cast<std::size_t>(u) * djk + v] =
                                hom(i, k).project(compose_maps(gu, fv));
                        }
                    }
                }
    }

    const FiniteDimAlgebra* A_;
    std::vector<ProjComplex> summands_;
    int n_ = 0;
    std::vector<HomSpace> hom_;
    std::vector<Elem> idems_;
    std::vector<std::vector<SparseVec>> sc_;
};

inline EndoAlgebra endo_algebra(const FiniteDimAlgebra& A, std::vector<ProjComplex> summands) {
    return EndoAlgebra(A, std::move(summands));
}

/// Per-block subspace store over the blocks of an EndoAlgebra.
class BlockSubspace {
public:
    explicit BlockSubspace(int n) : n_(n) {
        for (int b = 0; b < n * n; ++b) spaces_.emplace_back(Pivot::Low);
    }
    bool insert(const EndoAlgebra::Elem& x) {
        if (x.is_zero()) return false;
        return spaces_[static_cast<std::size_t>((x.i - 1) * n_ + (x.j - 1))].insert(x.coeffs);
    }
    bool contains(const EndoAlgebra::Elem& x) const {
        if (x.is_zero()) return true;
        return spaces_[static_cast<std::size_t>((x.i - 1) * n_ + (x.j - 1))].contains(x.coeffs);
    }
    long block_dim(int i, int j) const {
        return static_cast<long>(spaces_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))].rank());
    }
    long total_dim() const {
        long d = 0;
        for (const auto& s : spaces_) d += static_cast<long>(s.rank());
        return d;
    }
    /// Basis elements of block (i, j).
    std::vector<EndoAlgebra::Elem> block_basis(int i, int j) const {
        std::vector<EndoAlgebra::Elem> out;
        for (const auto& [piv, row] : spaces_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))].rows())
            out.push_back(EndoAlgebra::Elem{i, j, row});
        return out;
    }

private:
    int n_;
    std::vector<RowEchelon> spaces_;
};

struct RadicalReport {
    bool ok = false;
    std::string failure;
    IntMatrix rad_dims;
    IntMatrix rad2_dims;
    int nilpotency = 0;  // least k with rad^k = 0
    std::vector<EndoAlgebra::Elem> rad_basis;
};

/// Computes rad and rad^2 with a certificate that the algebra is basic:
/// each diagonal block splits as K + (trace-kernel nilpotents), off-diagonal
/// blocks multiply into those kernels, and the candidate radical is a
/// nilpotent ideal. Reports a named failure otherwise.
inline RadicalReport radical_layers(const EndoAlgebra& E) {
    RadicalReport rep;
    const FieldDescriptor& K = E.base().field();
    int n = E.parts();
    BlockSubspace rad(n);

    // Diagonal blocks: N_i = ker(x -> trace of left multiplication by x).
    for (int i = 1; i <= n; ++i) {
        int d = E.block_dim(i, i);
        std::vector<Scalar> tau;
        for (int b = 0; b < d; ++b) {
            Scalar tr = Scalar::zero(K);
            for (int t = 0; t < d; ++t)
                tr += sparse_get(E.structure(i, i, i, b, t), t, K);
            tau.push_back(tr);
        }
        Scalar tr_idem = Scalar::zero(K);
        for (const auto& [b, c] : E.idempotent(i).coeffs)
            tr_idem += c * tau[static_cast<std::size_t>(b)];
        if (tr_idem.is_zero()) {
            rep.failure = "identity of diagonal block " + std::to_string(i) +
                          " has zero multiplication trace";
            return rep;
        }
        // Kernel of the functional tau: d-1 dimensional.
        int lead = -1;
        for (int b = 0; b < d; ++b)
            if (!tau[static_cast<std::size_t>(b)].is_zero()) {
                lead = b;
                break;
            }
        int inserted = 0;
        for (int b = 0; b < d; ++b) {
            if (b == lead) continue;
            SparseVec v = sparse_unit(b, Scalar::one(K));
            sparse_axpy(v, -(tau[static_cast<std::size_t>(b)] / tau[static_cast<std::size_t>(lead)]),
                        sparse_unit(lead, Scalar::one(K)));
            if (rad.insert(EndoAlgebra::Elem{i, i, v})) ++inserted;
        }
        if (inserted != d - 1) {
            rep.failure = "trace kernel of diagonal block " + std::to_string(i) +
                          " has unexpected dimension";
            return rep;
        }
        if (rad.contains(E.idempotent(i))) {
            rep.failure = "identity of diagonal block " + std::to_string(i) +
                          " lies in the trace kernel";
            return rep;
        }
        // N_i must be a two-sided ideal of the block.
        auto nbasis = rad.block_basis(i, i);
        for (int b = 0; b < d; ++b) {
            EndoAlgebra::Elem u{i, i, sparse_unit(b, Scalar::one(K))};
            for (const auto& v : nbasis) {
                if (!rad.contains(E.mul(u, v)) || !rad.contains(E.mul(v, u))) {
                    rep.failure = "trace kernel of diagonal block " + std::to_string(i) +
                                  " is not an ideal; block is not local";
                    return rep;
                }
            }
        }
    }

    // Off-diagonal blocks belong to the radical once their back-and-forth
    // products land in the diagonal kernels (no two summands isomorphic).
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            for (int u = 0; u < E.block_dim(i, j); ++u)
                for (int v = 0; v < E.block_dim(j, i); ++v) {
                    EndoAlgebra::Elem prod{i, i, E.structure(i, j, i, u, v)};
                    if (!rad.contains(prod)) {
                        rep.failure = "blocks (" + std::to_string(i) + "," + std::to_string(j) +
                                      ") compose to a unit; summands " + std::to_string(i) +
                                      " and " + std::to_string(j) + " are isomorphic";
                        return rep;
                    }
                }
            for (int u = 0; u < E.block_dim(i, j); ++u)
                rad.insert(EndoAlgebra::Elem{i, j, sparse_unit(u, Scalar::one(K))});
        }

    // Nilpotency of the candidate radical, with rad^2 captured on the way.
    std::vector<std::vector<EndoAlgebra::Elem>> rad_basis(1);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (auto& e : rad.block_basis(i, j)) rad_basis[0].push_back(std::move(e));

    BlockSubspace rad2(n);
    long limit = E.total_dim() + 1;
    std::vector<EndoAlgebra::Elem> current = rad_basis[0];
    int power = 1;
    while (!current.empty()) {
        ++power;
        if (power > limit) {
            rep.failure = "candidate radical is not nilpotent";
            return rep;
        }
        BlockSubspace next(n);
        std::vector<EndoAlgebra::Elem> next_basis;
        for (const auto& x : current)
            for (const auto& g : rad_basis[0]) {
                if (x.j != g.i) continue;
                EndoAlgebra::Elem p = E.mul(x, g);
                if (next.insert(p)) next_basis.push_back(p);
            }
        if (power == 2)
            for (const auto& e : next_basis) rad2.insert(e);
        current = std::move(next_basis);
    }
    rep.nilpotency = power;

    rep.rad_dims.assign(static_cast<std::size_t>(n), std::vector<long>(n, 0));
    rep.rad2_dims.assign(static_cast<std::size_t>(n), std::vector<long>(n, 0));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            rep.rad_dims[i - 1][j - 1] = rad.block_dim(i, j);
            rep.rad2_dims[i - 1][j - 1] = rad2.block_dim(i, j);
        }
    rep.rad_basis = rad_basis[0];
    rep.ok = true;
    return rep;
}

/// Arrow-count matrix of the Gabriel quiver: entry (i, j) is the number of
/// arrows i -> j, i.e. dim of the (i, j) block of rad / rad^2.
inline IntMatrix gabriel_quiver(const RadicalReport& rad) {
    if (!rad.ok) throw EndoError("gabriel_quiver needs a successful radical computation: " +
                                 rad.failure);
    IntMatrix q = rad.rad_dims;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q[i].size(); ++j) q[i][j] -= rad.rad2_dims[i][j];
    return q;
}

/// Arrow counts of a quiver, comparable with gabriel_quiver output.
inline IntMatrix arrow_count_matrix(const Quiver& q) {
    IntMatrix m(static_cast<std::size_t>(q.vertex_count()),
                std::vector<long>(static_cast<std::size_t>(q.vertex_count()), 0));
    for (const Arrow& a : q.arrows()) ++m[a.src - 1][a.tgt - 1];
    return m;
}

/// Map from target-quiver arrow names to endomorphism-algebra elements with
/// matching endpoints (arrow i -> j lands in block (i, j)).
struct GeneratorAssignment {
    std::map<std::string, EndoAlgebra::Elem> arrows;
    std::string note;
};

/// Evaluates a path expression over the target quiver through an assignment.
inline EndoAlgebra::Elem eval_through(const EndoAlgebra& E, const GeneratorAssignment& g,
                                      const PathExpr& x, const Quiver& target) {
    EndoAlgebra::Elem acc_sum;
    for (const auto& [w, c] : x.terms()) {
        EndoAlgebra::Elem acc;
        if (w.is_trivial()) {
            acc = E.idempotent(w.source());
        } else {
            bool first = true;
            for (int id : w.arrow_ids()) {
                const auto it = g.arrows.find(target.arrow(id).name);
                if (it == g.arrows.end())
                    throw EndoError("assignment misses arrow " + target.arrow(id).name);
                acc = first ? it->second : E.mul(acc, it->second);
                first = false;
            }
        }
        acc_sum = E.add(acc_sum, E.scale(acc, c));
    }
    return acc_sum;
}

struct RelationCheck {
    std::string label;
    bool ok = false;
};

/// Machine-checkable evidence that the endomorphism algebra realizes a
/// presented algebra: relations vanish through the assignment, the
/// generators multiplicatively span, and dimensions agree.
struct IsoCertificate {
    std::vector<RelationCheck> relations;
    bool relations_ok = true;
    std::vector<long> closure_trace;
    bool closure_spans = false;
    long dim_target = 0;
    long dim_endo = 0;
    bool dims_equal = false;
    std::string assignment_note;
    bool valid = false;
};

inline IsoCertificate verify_presentation(const EndoAlgebra& E,
                                          const FiniteDimAlgebra& target_algebra,
                                          const GeneratorAssignment& g) {
    const Presentation& P = target_algebra.pres();
    if (P.quiver.vertex_count() != E.parts())
        throw EndoError("vertex count of target does not match summand count");
    for (const Arrow& a : P.quiver.arrows()) {
        auto it = g.arrows.find(a.name);
        if (it == g.arrows.end()) throw EndoError("assignment misses arrow " + a.name);
        const EndoAlgebra::Elem& e = it->second;
        if (!e.is_zero() && (e.i != a.src || e.j != a.tgt))
            throw EndoError("assignment endpoint mismatch for arrow " + a.name);
    }

    IsoCertificate cert;
    cert.assignment_note = g.note;
    for (const RelationElement& r : P.relations) {
        EndoAlgebra::Elem value = eval_through(E, g, r.elem, P.quiver);
        bool ok = value.is_zero();
        cert.relations_ok = cert.relations_ok && ok;
        cert.relations.push_back(RelationCheck{r.label, ok});
    }

    // Multiplicative closure of idempotents and generators.
    BlockSubspace span(E.parts());
    std::vector<EndoAlgebra::Elem> frontier;
    for (int i = 1; i <= E.parts(); ++i)
        if (span.insert(E.idempotent(i))) frontier.push_back(E.idempotent(i));
    std::vector<EndoAlgebra::Elem> gens;
    for (const Arrow& a : P.quiver.arrows()) {
        const EndoAlgebra::Elem& e = g.arrows.at(a.name);
        if (e.is_zero()) continue;
        gens.push_back(e);
        if (span.insert(e)) frontier.push_back(e);
    }
    cert.closure_trace.push_back(span.total_dim());
    while (!frontier.empty()) {
        std::vector<EndoAlgebra::Elem> next;
        for (const auto& x : frontier)
            for (const auto& e : gens) {
                if (x.j != e.i) continue;
                EndoAlgebra::Elem p = E.mul(x, e);
                if (span.insert(p)) next.push_back(p);
            }
        frontier = std::move(next);
        cert.closure_trace.push_back(span.total_dim());
    }
    cert.closure_spans = span.total_dim() == E.total_dim();

    cert.dim_target = target_algebra.total_dim();
    cert.dim_endo = E.total_dim();
    cert.dims_equal = cert.dim_target == cert.dim_endo;
    cert.valid = cert.relations_ok && cert.closure_spans && cert.dims_equal;
    return cert;
}

}  // namespace bqa
