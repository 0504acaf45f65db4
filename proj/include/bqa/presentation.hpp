#pragma once

#include <string>
#include <vector>

#include "bqa/expr.hpp"
#include "bqa/quiver.hpp"
#include "bqa/scalar.hpp"

namespace bqa {

struct PresentationError : Error {
    using Error::Error;
};

/// One generator of the defining ideal: a labeled (source,target)-homogeneous
/// element that is declared zero in the quotient.
struct RelationElement {
    std::string label;
    std::string expr;  // canonical expression string, lambda substituted
    PathExpr elem;
};

/// Quiver plus relations plus the family parameters that produced them.
struct Presentation {
    Quiver quiver;
    FieldDescriptor field;
    Scalar lambda;
    int m = 0;
    char family = 'C';  // 'S', 'E', 'F', or 'C' for custom
    std::vector<RelationElement> relations;

    PathExpr parse(const std::string& text) const {
        return parse_expression(text, quiver, field, lambda);
    }
};

inline Quiver quiver_S() {
    Quiver q(6);
    q.add_arrow("a", 1, 2);  // alpha
    q.add_arrow("b", 2, 3);  // beta
    q.add_arrow("g", 3, 4);  // gamma
    q.add_arrow("s", 4, 1);  // sigma
    q.add_arrow("r", 1, 6);  // rho
    q.add_arrow("w", 6, 3);  // omega
    q.add_arrow("n", 3, 5);  // nu
    q.add_arrow("d", 5, 1);  // delta
    return q;
}

inline Quiver quiver_E() {
    Quiver q(6);
    q.add_arrow("a1", 1, 2);
    q.add_arrow("a2", 2, 3);
    q.add_arrow("a3", 1, 6);
    q.add_arrow("a4", 6, 3);
    q.add_arrow("a5", 3, 4);
    q.add_arrow("a6", 4, 1);
    q.add_arrow("b1", 1, 5);
    q.add_arrow("b2", 5, 3);
    q.add_arrow("g0", 3, 1);
    return q;
}

inline Quiver quiver_F() {
    Quiver q(6);
    q.add_arrow("a1", 1, 2);
    q.add_arrow("a2", 2, 3);
    q.add_arrow("a3", 1, 6);
    q.add_arrow("a4", 6, 3);
    q.add_arrow("b1", 1, 5);
    q.add_arrow("b2", 5, 3);
    q.add_arrow("b3", 1, 4);
    q.add_arrow("b4", 4, 3);
    q.add_arrow("g1", 3, 1);
    q.add_arrow("g2", 3, 1);
    return q;
}

namespace detail {

inline void check_family_params(int m, const Scalar& lambda) {
    if (m < 2) throw PresentationError("family parameter m must be at least 2");
    if (lambda.is_zero()) throw PresentationError("family parameter lambda must be nonzero");
}

inline void add_relation(Presentation& P, const std::string& label, const std::string& expr) {
    PathExpr e = P.parse(expr);
    if (e.is_zero()) throw PresentationError("relation " + label + " is identically zero");
    P.relations.push_back(RelationElement{label, expr_to_string(e, P.quiver), std::move(e)});
}

/// "(base)^r" with the r = 0 and r = 1 cases flattened; base must be a cycle
/// at `vertex` when r = 0.
inline std::string power_str(const std::string& base, int r, int vertex) {
    if (r <= 0) return "e" + std::to_string(vertex);
    if (r == 1) return base;
    return "(" + base + ")^" + std::to_string(r);
}

inline std::string power_times(const std::string& base, int r, int vertex, const std::string& tail) {
    if (r <= 0) return tail;
    std::string head = "(" + base + ")^" + std::to_string(r);
    if (r == 1) head = base;
    if (tail.empty()) return head;
    return head + "*" + tail;
}

/// The cycle-power relations "theta C^m = 0 = C^m phi" for every cycle C of
/// length 3 or 4 at each vertex, expanded over incident arrows.
inline void add_cycle_relations(Presentation& P, const std::string& tag) {
    const Quiver& q = P.quiver;
    int count = 0;
    for (int i = 1; i <= q.vertex_count(); ++i) {
        std::vector<Path> cycles = cycles_at(q, i, 3);
        for (const Path& c : cycles_at(q, i, 4)) cycles.push_back(c);
        for (const Path& c : cycles) {
            Path cm = cycle_power(c, P.m);
            for (const Arrow& th : q.arrows()) {
                if (th.tgt != i) continue;
                Path word = Path::concat_unchecked(Path::of(q, {th.id}), cm);
                add_relation(P, tag + "#" + std::to_string(++count), word.str(q));
            }
            for (const Arrow& ph : q.arrows()) {
                if (ph.src != i) continue;
                Path word = Path::concat_unchecked(cm, Path::of(q, {ph.id}));
                add_relation(P, tag + "#" + std::to_string(++count), word.str(q));
            }
        }
    }
}

}  // namespace detail

/// Defining presentation of the higher spherical algebra S(m, lambda).
inline Presentation build_S(int m, const Scalar& lambda, const FieldDescriptor& field) {
    detail::check_family_params(m, lambda);
    Presentation P{quiver_S(), field, lambda, m, 'S', {}};
    const std::string M1 = std::to_string(m - 1), M = std::to_string(m);
    detail::add_relation(P, "(1)", "b*n*d - b*g*s - l*(b*g*s*a)^" + M1 + "*b*g*s");
    detail::add_relation(P, "(2)", "n*d*a - g*s*a - l*(g*s*a*b)^" + M1 + "*g*s*a");
    detail::add_relation(P, "(3)", "s*r*w - s*a*b - l*(s*a*b*g)^" + M1 + "*s*a*b");
    detail::add_relation(P, "(4)", "r*w*g - a*b*g - l*(a*b*g*s)^" + M1 + "*a*b*g");
    detail::add_relation(P, "(5)", "a*b*n - r*w*n");
    detail::add_relation(P, "(6)", "d*a*b - d*r*w");
    detail::add_relation(P, "(7)", "w*g*s - w*n*d");
    detail::add_relation(P, "(8)", "g*s*r - n*d*r");
    detail::add_relation(P, "(9)", "(a*b*g*s)^" + M + "*a");
    detail::add_relation(P, "(10)", "(g*s*a*b)^" + M + "*g");
    return P;
}

/// Defining presentation of E(m, lambda).
inline Presentation build_E(int m, const Scalar& lambda, const FieldDescriptor& field) {
    detail::check_family_params(m, lambda);
    Presentation P{quiver_E(), field, lambda, m, 'E', {}};
    const std::string M1 = std::to_string(m - 1);
    detail::add_relation(P, "(E1)", "a1*a2 - a3*a4 + b1*b2");
    detail::add_relation(P, "(E2)", "a3*a4*a5 - a1*a2*a5 - l*(a1*a2*a5*a6)^" + M1 + "*a1*a2*a5");
    detail::add_relation(P, "(E3a)", "g0*b1");
    detail::add_relation(P, "(E3b)", "g0*a3 - a5*a6*a3");
    detail::add_relation(P, "(E3c)", "g0*a1 - a5*a6*a1 - l*(a5*a6*a1*a2)^" + M1 + "*a5*a6*a1");
    detail::add_relation(P, "(E4a)", "a2*g0 - a2*a5*a6 - l*(a2*a5*a6*a1)^" + M1 + "*a2*a5*a6");
    detail::add_relation(P, "(E4b)", "(a2*a5*a6*a1)^" + M1 + "*a2*a5*a6*a3");
    detail::add_relation(P, "(E5a)", "a4*g0 - a4*a5*a6");
    detail::add_relation(P, "(E5b)", "a4*a5*a6*a1*(a2*a5*a6*a1)^" + M1);
    detail::add_relation(P, "(E6)", "a6*a3*a4 - a6*a1*a2 - l*(a6*a1*a2*a5)^" + M1 + "*a6*a1*a2");
    detail::add_relation(P, "(E7a)", "b2*g0");
    detail::add_relation(P, "(E7b)", "b2*a5*a6*a1");
    detail::add_relation(P, "(E7c)", "b2*a5*a6*a3");
    detail::add_relation(P, "(E7d)", "b2*a5*a6*b1*b2");
    detail::add_cycle_relations(P, "(E8)");
    return P;
}

/// Defining presentation of F(m, lambda).
inline Presentation build_F(int m, const Scalar& lambda, const FieldDescriptor& field) {
    detail::check_family_params(m, lambda);
    Presentation P{quiver_F(), field, lambda, m, 'F', {}};
    const std::string M1 = std::to_string(m - 1), M = std::to_string(m);
    detail::add_relation(P, "(F1a)", "a1*a2 - a3*a4 + b1*b2");
    detail::add_relation(P, "(F1b)", "a1*a2 - a3*a4 + b3*b4 + l*(a3*a4*g1)^" + M1 + "*a3*a4");
    detail::add_relation(P, "(F2a)", "a2*g1 - a2*g2");
    detail::add_relation(P, "(F2b)", "g2*a1 - g1*a1");
    detail::add_relation(P, "(F3a)", "a4*g2 - a4*g1 - l*(a4*g1*a3)^" + M1 + "*a4*g1");
    detail::add_relation(P, "(F3b)", "g2*a3 - g1*a3 - l*(g1*a3*a4)^" + M1 + "*g1*a3");
    detail::add_relation(P, "(F4a)", "b2*g1");
    detail::add_relation(P, "(F4b)", "b4*g2");
    detail::add_relation(P, "(F4c)", "g1*b1");
    detail::add_relation(P, "(F4d)", "g2*b3");
    detail::add_relation(P, "(F5a)", "b2*g2*b1*b2");
    detail::add_relation(P, "(F5b)", "b4*g1*b3*b4");
    detail::add_relation(P, "(F6a)", "g1*a1*a2 - g1*a3*a4");
    detail::add_relation(P, "(F6b)", "a1*a2*g1 - a3*a4*g1");
    detail::add_relation(P, "(F7a)", "(a3*a4*g1)^" + M + "*a1");
    detail::add_relation(P, "(F7b)", "(a3*a4*g1)^" + M + "*a3");
    detail::add_relation(P, "(F7c)", "g1*(a3*a4*g1)^" + M);
    detail::add_relation(P, "(F7d)", "a2*(g1*a3*a4)^" + M);
    detail::add_relation(P, "(F7e)", "a4*(g1*a3*a4)^" + M);
    return P;
}

inline Presentation build_family(char family, int m, const Scalar& lambda,
                                 const FieldDescriptor& field) {
    switch (family) {
        case 'S': return build_S(m, lambda, field);
        case 'E': return build_E(m, lambda, field);
        case 'F': return build_F(m, lambda, field);
        default: throw PresentationError(std::string("unknown family: ") + family);
    }
}

/// A custom presentation from relation expression strings.
inline Presentation make_presentation(const Quiver& q, const FieldDescriptor& field,
                                      const Scalar& lambda, int m,
                                      const std::vector<std::string>& relation_exprs) {
    Presentation P{q, field, lambda, m, 'C', {}};
    int k = 0;
    for (const std::string& text : relation_exprs)
        detail::add_relation(P, "#" + std::to_string(++k), text);
    return P;
}

/// Labeled identity that must reduce to zero but is not part of the defining
/// ideal; used for consequence checks.
struct DerivedIdentity {
    std::string label;
    std::string expr;
};

/// Consequences of the defining relations of S that later computations lean
/// on: annihilation of the long cycles and the equality of their powers.
inline std::vector<DerivedIdentity> derived_identities_S(int m) {
    const std::string M1 = std::to_string(m - 1), M = std::to_string(m);
    std::vector<DerivedIdentity> out = {
        {"(1'a)", "(b*g*s*a)^" + M1 + "*b*g*s*r"},
        {"(1'b)", "(a*b*g*s)^" + M + "*r"},
        {"(2'a)", "w*g*s*a*(b*g*s*a)^" + M1},
        {"(2'b)", "w*(g*s*a*b)^" + M},
        {"(3'a)", "(s*a*b*g)^" + M1 + "*s*a*b*n"},
        {"(3'b)", "(g*s*a*b)^" + M + "*n"},
        {"(4'a)", "d*a*b*g*(s*a*b*g)^" + M1},
        {"(4'b)", "d*(a*b*g*s)^" + M},
    };
    for (int r = 2; r <= m; ++r) {
        std::string R = std::to_string(r);
        out.push_back({"(5'a)r=" + R, "(r*w*n*d)^" + R + " - (a*b*g*s)^" + R});
        out.push_back({"(5'b)r=" + R, "(n*d*r*w)^" + R + " - (g*s*a*b)^" + R});
    }
    return out;
}

/// Consequences of (F1)-(F7) used in the dimension count for F(m, lambda).
inline std::vector<DerivedIdentity> derived_identities_F(int m) {
    const std::string M1 = std::to_string(m - 1), M = std::to_string(m);
    std::vector<DerivedIdentity> out = {
        {"(1'a)", "a3*a4*g1*a1*a2 - a3*a4*g1*a3*a4"},
        {"(1'b)", "a3*a4*g1*b1"},
        {"(1'c)", "a3*a4*g1*b3"},
        {"(2'a)", "a2*g1*b1"},
        {"(2'b)", "a2*g1*b3"},
        {"(2'c)", "(a2*g1*a1)^" + M1 + "*a2*g1*a3"},
        {"(3'a)", "g1*a3*a4*g1*b1"},
        {"(3'b)", "g1*a3*a4*g1*b3"},
        {"(3'c)", "g1*a3*a4*g1 - g1*a3*a4*g2"},
        {"(4'a)", "b4*g1*a1"},
        {"(4'b)", "b4*g1*a3"},
        {"(4'c)", "b4*g1*b1"},
        {"(5'a)", "b2*g2*a1"},
        {"(5'b)", "b2*g2*a3"},
        {"(5'c)", "b2*g2*b3"},
        {"(6'a)", "a4*g1*b1"},
        {"(6'b)", "a4*g1*b3"},
        {"(6'c)", "(a4*g1*a3)^" + M1 + "*a4*g1*a1"},
    };
    // (7'): cycle powers annihilate incident arrows, as for the E family.
    Quiver q = quiver_F();
    int count = 0;
    for (int i = 1; i <= q.vertex_count(); ++i) {
        std::vector<Path> cycles = cycles_at(q, i, 3);
        for (const Path& c : cycles_at(q, i, 4)) cycles.push_back(c);
        for (const Path& c : cycles) {
            Path cm = cycle_power(c, m);
            for (const Arrow& th : q.arrows())
                if (th.tgt == i)
                    out.push_back({"(7')#" + std::to_string(++count),
                                   Path::concat_unchecked(Path::of(q, {th.id}), cm).str(q)});
            for (const Arrow& ph : q.arrows())
                if (ph.src == i)
                    out.push_back({"(7')#" + std::to_string(++count),
                                   Path::concat_unchecked(cm, Path::of(q, {ph.id})).str(q)});
        }
    }
    return out;
}

using IntMatrix = std::vector<std::vector<long>>;

/// Cartan matrix each family is required to realize, with m substituted.
inline IntMatrix expected_cartan(char family, int m) {
    const long M = m;
    switch (family) {
        case 'S':
            return {{M + 1, M, M + 1, M, M, M},     {M, M + 1, M, M, M, M - 1},
                    {M + 1, M, M + 1, M, M, M},     {M, M, M, M + 1, M - 1, M},
                    {M, M, M, M - 1, M + 1, M},     {M, M - 1, M, M, M, M + 1}};
        case 'E':
            return {{M + 1, M, M + 1, M, 1, M},     {M, M + 1, M, M, 0, M - 1},
                    {M + 1, M, M + 1, M, 1, M},     {M, M, M, M + 1, 1, M},
                    {1, 0, 1, 1, 2, 0},             {M, M - 1, M, M, 0, M + 1}};
        case 'F':
            return {{M + 1, M, M + 1, 1, 1, M},     {M, M + 1, M, 0, 0, M - 1},
                    {M + 1, M, M + 1, 1, 1, M},     {1, 0, 1, 2, 0, 0},
                    {1, 0, 1, 0, 2, 0},             {M, M - 1, M, 0, 0, M + 1}};
        default: throw PresentationError(std::string("unknown family: ") + family);
    }
}

inline long expected_dimension(char family, int m) {
    switch (family) {
        case 'S': return 36L * m + 4;
        case 'E': return 25L * m + 13;
        case 'F': return 16L * m + 16;
        default: throw PresentationError(std::string("unknown family: ") + family);
    }
}

/// A claimed basis for one component of an algebra: either a single
/// (row, col) block, or a full row (col = 0), given by expression strings.
struct CatalogEntry {
    std::string label;
    int row = 0;
    int col = 0;  // 0 = the whole row e_row * A
    std::vector<std::string> exprs;
};

namespace detail {

inline const char* x_cycle_S(int i) {
    static const char* X[7] = {"", "a*b*g*s", "b*g*s*a", "g*s*a*b", "s*a*b*g", "d*r*w*n", "w*n*d*r"};
    return X[i];
}

inline const char* x_path_S(int i, int j) {
    // Distinguished shortest path i -> j; "" on the diagonal.
    static const char* X[7][7] = {
        {"", "", "", "", "", "", ""},
        {"", "", "a", "a*b", "a*b*g", "a*b*n", "r"},
        {"", "b*g*s", "", "b", "b*g", "b*n", "b*g*s*r"},
        {"", "g*s", "g*s*a", "", "g", "n", "g*s*r"},
        {"", "s", "s*a", "s*a*b", "", "s*a*b*n", "s*r"},
        {"", "d", "d*a", "d*r*w", "d*r*w*g", "", "d*r"},
        {"", "w*n*d", "w*n*d*a", "w", "w*g", "w*n", ""}};
    return X[i][j];
}

}  // namespace detail

/// The per-block normal-form basis catalog of S(m, lambda): powers of the
/// distinguished length-4 cycles times shortest connecting paths, plus the
/// two exceptional alternates between vertices 1 and 3.
inline std::vector<CatalogEntry> basis_catalog_S(int m) {
    std::vector<CatalogEntry> out;
    auto is_short_pair = [](int i, int j) {
        return (i == 2 && j == 6) || (i == 6 && j == 2) || (i == 4 && j == 5) ||
               (i == 5 && j == 4);
    };
    for (int i = 1; i <= 6; ++i) {
        for (int j = 1; j <= 6; ++j) {
            CatalogEntry e;
            e.label = "S_" + std::to_string(i) + std::to_string(j);
            e.row = i;
            e.col = j;
            std::string cyc = detail::x_cycle_S(i);
            if (i == j) {
                for (int r = 0; r <= m; ++r) e.exprs.push_back(detail::power_str(cyc, r, i));
            } else {
                int top = is_short_pair(i, j) ? m - 2 : m - 1;
                for (int r = 0; r <= top; ++r)
                    e.exprs.push_back(detail::power_times(cyc, r, i, detail::x_path_S(i, j)));
                if (i == 1 && j == 3) e.exprs.push_back("r*w");
                if (i == 3 && j == 1) e.exprs.push_back("n*d");
            }
            out.push_back(std::move(e));
        }
    }
    return out;
}

/// Per-row bases of E(m, lambda) from the dimension count.
inline std::vector<CatalogEntry> basis_catalog_E(int m) {
    std::vector<CatalogEntry> out;
    auto row = [&](int i, const std::string& cyc, const std::vector<std::string>& stubs,
                   const std::vector<std::string>& extra, int stub_top,
                   const std::string& short_tail, int short_top) {
        CatalogEntry e;
        e.label = "B" + std::to_string(i);
        e.row = i;
        e.col = 0;
        for (int r = 0; r <= stub_top; ++r)
            for (const std::string& s : stubs) e.exprs.push_back(detail::power_times(cyc, r, i, s));
        for (const std::string& s : extra) e.exprs.push_back(s);
        for (int r = 0; r <= short_top; ++r)
            e.exprs.push_back(detail::power_times(cyc, r, i, short_tail));
        out.push_back(std::move(e));
    };
    row(1, "a1*a2*a5*a6", {"e1", "a1", "a1*a2", "a1*a2*a5", "a3"},
        {"a3*a4", "b1", detail::power_str("a1*a2*a5*a6", m, 1)}, m - 1, "", -1);
    row(2, "a2*a5*a6*a1", {"e2", "a2", "a2*a5", "a2*a5*a6"},
        {detail::power_str("a2*a5*a6*a1", m, 2)}, m - 1, "a2*a5*a6*a3", m - 2);
    row(3, "a5*a6*a1*a2", {"e3", "a5", "a5*a6", "a5*a6*a1", "a5*a6*a3"},
        {"g0", "a5*a6*b1", detail::power_str("a5*a6*a1*a2", m, 3)}, m - 1, "", -1);
    row(4, "a6*a1*a2*a5", {"e4", "a6", "a6*a1", "a6*a1*a2", "a6*a3"},
        {"a6*b1", detail::power_str("a6*a1*a2*a5", m, 4)}, m - 1, "", -1);
    row(5, "", {}, {"e5", "b2", "b2*a5", "b2*a5*a6", "b2*a5*a6*b1"}, -1, "", -1);
    row(6, "a4*a5*a6*a3", {"e6", "a4", "a4*a5", "a4*a5*a6"},
        {detail::power_str("a4*a5*a6*a3", m, 6)}, m - 1, "a4*a5*a6*a1", m - 2);
    return out;
}

/// Per-row bases of F(m, lambda) from the dimension count.
inline std::vector<CatalogEntry> basis_catalog_F(int m) {
    std::vector<CatalogEntry> out;
    auto add = [&](int i, std::vector<std::string> exprs) {
        out.push_back(CatalogEntry{"B" + std::to_string(i), i, 0, std::move(exprs)});
    };
    std::vector<std::string> b1 = {"b1", "b3", "a1*a2", detail::power_str("a3*a4*g1", m, 1)};
    for (int r = 0; r <= m - 1; ++r)
        for (const std::string& s : {std::string("e1"), std::string("a1"), std::string("a3"),
                                     std::string("a3*a4")})
            b1.push_back(detail::power_times("a3*a4*g1", r, 1, s));
    add(1, b1);

    std::vector<std::string> b2;
    for (int r = 0; r <= m - 1; ++r)
        for (const std::string& s :
             {std::string("e2"), std::string("a2"), std::string("a2*g1")})
            b2.push_back(detail::power_times("a2*g1*a1", r, 2, s));
    b2.push_back(detail::power_str("a2*g1*a1", m, 2));
    for (int r = 0; r <= m - 2; ++r) b2.push_back(detail::power_times("a2*g1*a1", r, 2, "a2*g1*a3"));
    add(2, b2);

    std::vector<std::string> b3 = {"g2", "g2*b1", "g1*b3", detail::power_str("g1*a3*a4", m, 3)};
    for (int r = 0; r <= m - 1; ++r)
        for (const std::string& s : {std::string("e3"), std::string("g1"), std::string("g1*a3"),
                                     std::string("g1*a1")})
            b3.push_back(detail::power_times("g1*a3*a4", r, 3, s));
    add(3, b3);

    add(4, {"b4*g1", "b4", "e4", "b4*g1*b3"});
    add(5, {"b2*g2", "b2", "e5", "b2*g2*b1"});

    std::vector<std::string> b6;
    for (int r = 0; r <= m - 1; ++r)
        for (const std::string& s :
             {std::string("e6"), std::string("a4"), std::string("a4*g1")})
            b6.push_back(detail::power_times("a4*g1*a3", r, 6, s));
    b6.push_back(detail::power_str("a4*g1*a3", m, 6));
    for (int r = 0; r <= m - 2; ++r) b6.push_back(detail::power_times("a4*g1*a3", r, 6, "a4*g1*a1"));
    add(6, b6);
    return out;
}

inline std::vector<CatalogEntry> basis_catalog(char family, int m) {
    switch (family) {
        case 'S': return basis_catalog_S(m);
        case 'E': return basis_catalog_E(m);
        case 'F': return basis_catalog_F(m);
        default: throw PresentationError(std::string("unknown family: ") + family);
    }
}

}  // namespace bqa
