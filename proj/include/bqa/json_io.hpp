#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "bqa/algebra.hpp"
#include "bqa/complexes.hpp"
#include "bqa/endo.hpp"
#include "bqa/presentation.hpp"
#include "bqa/symmetric.hpp"
#include "bqa/tilting.hpp"

namespace bqa {

using Json = nlohmann::ordered_json;

struct IoError : Error {
    using Error::Error;
};

inline Json to_json(const IntMatrix& m) {
    Json out = Json::array();
    for (const auto& row : m) out.push_back(row);
    return out;
}

inline Json quiver_to_json(const Quiver& q) {
    Json arrows = Json::array();
    for (const Arrow& a : q.arrows())
        arrows.push_back(Json{{"name", a.name}, {"src", a.src}, {"tgt", a.tgt}});
    return Json{{"vertices", q.vertex_count()}, {"arrows", arrows}};
}

inline Quiver quiver_from_json(const Json& j) {
    Quiver q(j.at("vertices").get<int>());
    for (const Json& a : j.at("arrows"))
        q.add_arrow(a.at("name").get<std::string>(), a.at("src").get<int>(),
                    a.at("tgt").get<int>());
    return q;
}

inline Json presentation_to_json(const Presentation& P) {
    Json relations = Json::array();
    for (const RelationElement& r : P.relations)
        relations.push_back(Json{{"label", r.label}, {"expr", r.expr}});
    return Json{{"family", std::string(1, P.family)},
                {"m", P.m},
                {"lambda", P.lambda.str()},
                {"field", P.field.str()},
                {"quiver", quiver_to_json(P.quiver)},
                {"relations", relations}};
}

inline Presentation presentation_from_json(const Json& j) {
    FieldDescriptor field = FieldDescriptor::parse(j.at("field").get<std::string>());
    Scalar lambda = Scalar::parse(field, j.at("lambda").get<std::string>());
    Quiver q = quiver_from_json(j.at("quiver"));
    Presentation P{q, field, lambda, j.at("m").get<int>(), 'C', {}};
    std::string fam = j.at("family").get<std::string>();
    if (fam.size() == 1) P.family = fam[0];
    for (const Json& r : j.at("relations")) {
        std::string label = r.at("label").get<std::string>();
        std::string expr = r.at("expr").get<std::string>();
        PathExpr e = P.parse(expr);
        P.relations.push_back(RelationElement{label, expr_to_string(e, P.quiver), std::move(e)});
    }
    return P;
}

/// Serialized algebra: presentation, bound, per-block normal-form bases in
/// canonical order, structure constants as global-index quadruples
/// (left, right, result, coefficient), and the Cartan matrix.
inline Json algebra_to_json(const FiniteDimAlgebra& A) {
    int n = A.vertex_count();
    std::vector<int> offset(static_cast<std::size_t>(n) * n + 1, 0);
    int off = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            offset[static_cast<std::size_t>((i - 1) * n + (j - 1))] = off;
            off += A.block_dim(i, j);
        }
    Json basis = Json::array();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            Json words = Json::array();
            for (const Path& w : A.basis(i, j)) words.push_back(w.str(A.quiver()));
            basis.push_back(Json{{"src", i}, {"tgt", j}, {"words", words}});
        }
    Json structure = Json::array();
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int u = 0; u < A.block_dim(i, j); ++u)
                    for (int v = 0; v < A.block_dim(j, k); ++v) {
                        const SparseVec& prod = A.structure(i, j, k, u, v);
                        int gu = offset[static_cast<std::size_t>((i - 1) * n + (j - 1))] + u;
                        int gv = offset[static_cast<std::size_t>((j - 1) * n + (k - 1))] + v;
                        int base = offset[static_cast<std::size_t>((i - 1) * n + (k - 1))];
                        for (const auto& [idx, c] : prod)
                            structure.push_back(Json::array({gu, gv, base + idx, c.str()}));
                    }
    return Json{{"field", A.field().str()},
                {"lambda", A.pres().lambda.str()},
                {"bound", A.bound()},
                {"dimension", A.total_dim()},
                {"presentation", presentation_to_json(A.pres())},
                {"cartan", to_json(A.cartan_matrix())},
                {"basis", basis},
                {"structure", structure}};
}

/// Rebuilds the algebra from its serialized presentation, then checks the
/// recorded dimension, Cartan matrix, and basis words against the rebuild.
inline FiniteDimAlgebra algebra_from_json(const Json& j) {
    Presentation P = presentation_from_json(j.at("presentation"));
    FiniteDimAlgebra A = quotient_algebra(P, j.at("bound").get<int>());
    if (A.total_dim() != j.at("dimension").get<long>())
        throw IoError("algebra file dimension does not match its presentation");
    if (to_json(A.cartan_matrix()) != j.at("cartan"))
        throw IoError("algebra file Cartan matrix does not match its presentation");
    std::size_t at = 0;
    for (int i = 1; i <= A.vertex_count(); ++i)
        for (int k = 1; k <= A.vertex_count(); ++k) {
            const Json& blk = j.at("basis").at(at++);
            if (blk.at("src").get<int>() != i || blk.at("tgt").get<int>() != k)
                throw IoError("algebra file basis blocks out of order");
            const Json& words = blk.at("words");
            if (static_cast<int>(words.size()) != A.block_dim(i, k))
                throw IoError("algebra file basis size mismatch");
            for (int b = 0; b < A.block_dim(i, k); ++b)
                if (words.at(static_cast<std::size_t>(b)).get<std::string>() !=
                    A.basis(i, k)[static_cast<std::size_t>(b)].str(A.quiver()))
                    throw IoError("algebra file basis word mismatch");
        }
    return A;
}

inline Json complex_to_json(const ProjComplex& X) {
    Json terms = Json::array();
    for (int n = X.lo(); n <= X.hi(); ++n) terms.push_back(X.term(n));
    Json diffs = Json::array();
    const FiniteDimAlgebra& A = X.algebra();
    for (int n = X.lo() + 1; n <= X.hi(); ++n) {
        // sparse: one (row, col, expr) entry per nonzero differential entry
        Json entries = Json::array();
        const ElemMatrix& d = X.diff(n);
        for (std::size_t r = 0; r < d.size(); ++r)
            for (std::size_t c = 0; c < d[r].size(); ++c)
                if (!d[r][c].is_zero())
                    entries.push_back(Json{{"row", r},
                                           {"col", c},
                                           {"expr", expr_to_string(A.to_expr(d[r][c]),
                                                                   A.quiver())}});
        diffs.push_back(Json{{"degree", n}, {"entries", entries}});
    }
    return Json{{"lo", X.lo()}, {"hi", X.hi()}, {"terms", terms}, {"differentials", diffs}};
}

inline Json stabilization_to_json(const StabilizationReport& r) {
    return Json{{"dims_match", r.dims_match},
                {"radical_vanishes", r.radical_vanishes},
                {"stable", r.stable()},
                {"dims_at_L", to_json(r.dims_at_L)},
                {"dims_at_L_plus_1", to_json(r.dims_at_L1)}};
}

inline Json catalog_report_to_json(const CatalogReport& r) {
    Json entries = Json::array();
    for (const CatalogEntryReport& e : r.entries)
        entries.push_back(Json{{"label", e.label},
                               {"ok", e.ok},
                               {"count", e.count},
                               {"expected_dim", e.expected_dim},
                               {"independent", e.independent},
                               {"error", e.parse_error}});
    return Json{{"all_ok", r.all_ok}, {"entries", entries}};
}

inline Json form_result_to_json(const FormSearchResult& r) {
    Json out{{"status", r.status == FormSearchStatus::Found
                            ? "found"
                            : r.status == FormSearchStatus::NoneExhaustive ? "none-exhaustive"
                                                                           : "indeterminate"},
             {"trace_space_dim", r.trace_space_dim},
             {"attempts_used", r.attempts_used}};
    if (r.certificate) {
        Json f = Json::array();
        for (const Scalar& c : r.certificate->functional) f.push_back(c.str());
        out["certificate"] = Json{{"functional", f}, {"gram_det", r.certificate->gram_det.str()}};
    }
    return out;
}

inline Json tilting_report_to_json(const TiltingReport& r) {
    Json t1 = Json::array();
    for (const auto& c : r.t1)
        t1.push_back(Json{{"from", c.k},
                          {"to", c.l},
                          {"shift", c.shift},
                          {"dim", c.dim},
                          {"overlap", c.overlap}});
    Json alt = Json::array();
    for (const auto& c : r.alt)
        alt.push_back(Json{{"from", c.k}, {"to", c.l}, {"hom", c.hom_dim}, {"sum", c.alt_sum}});
    Json t2 = Json::array();
    for (const auto& w : r.t2)
        t2.push_back(Json{{"summand", w.summand},
                          {"base_in_sum", w.base_in_sum},
                          {"cone_homology", w.cone_homology},
                          {"ok", w.ok}});
    return Json{{"t1_vanishing", t1},
                {"t1_ok", r.t1_ok},
                {"alternating_sum", alt},
                {"alternating_ok", r.alt_ok},
                {"generation_witnesses", t2},
                {"t2_ok", r.t2_ok},
                {"k0_determinant", r.k0_det},
                {"k0_ok", r.k0_ok},
                {"failure", r.failure},
                {"pass", r.pass}};
}

inline Json radical_to_json(const RadicalReport& r) {
    return Json{{"ok", r.ok},
                {"failure", r.failure},
                {"rad_dims", to_json(r.rad_dims)},
                {"rad2_dims", to_json(r.rad2_dims)},
                {"nilpotency", r.nilpotency}};
}

inline Json certificate_to_json(const IsoCertificate& c, const IntMatrix& gabriel,
                                const IntMatrix& cartan_endo, const IntMatrix& cartan_target) {
    Json rel = Json::array();
    for (const RelationCheck& r : c.relations) rel.push_back(Json{{"label", r.label}, {"ok", r.ok}});
    return Json{{"relations", rel},
                {"relations_ok", c.relations_ok},
                {"closure_trace", c.closure_trace},
                {"closure_spans", c.closure_spans},
                {"dim_target", c.dim_target},
                {"dim_endo", c.dim_endo},
                {"dims_equal", c.dims_equal},
                {"assignment", c.assignment_note},
                {"gabriel", to_json(gabriel)},
                {"cartan_endo", to_json(cartan_endo)},
                {"cartan_target", to_json(cartan_target)},
                {"valid", c.valid}};
}

}  // namespace bqa
