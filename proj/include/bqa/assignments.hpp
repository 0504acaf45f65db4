#pragma once

#include <string>

#include "bqa/endo.hpp"
#include "bqa/presentation.hpp"

namespace bqa {

/// Built-in generator assignment for the endomorphism algebra of the
/// variant-1 sum over S(m, lambda): the six arrow-induced module maps, the
/// cycle-completing map into the stalk of P_3, and the two maps through the
/// replaced fifth summand.
inline GeneratorAssignment builtin_assignment_E(const EndoAlgebra& E,
                                                const FiniteDimAlgebra& S) {
    const std::string M1 = std::to_string(S.pres().m - 1);
    GeneratorAssignment g;
    g.note = "primary";
    g.arrows["a1"] = E.module_map(1, 2, S.reduce_str("a"));
    g.arrows["a2"] = E.module_map(2, 3, S.reduce_str("b"));
    g.arrows["a3"] = E.module_map(1, 6, S.reduce_str("r"));
    g.arrows["a4"] = E.module_map(6, 3, S.reduce_str("w"));
    g.arrows["a5"] = E.module_map(3, 4, S.reduce_str("g"));
    g.arrows["a6"] = E.module_map(4, 1, S.reduce_str("s"));
    g.arrows["g0"] = E.module_map(3, 1, S.reduce_str("n*d"));
    g.arrows["b1"] = E.module_map(1, 5, S.reduce_str("r*w - a*b"));
    g.arrows["b2"] = E.module_map(5, 3, S.idempotent(3));
    return g;
}

/// Built-in generator assignment for the variant-2 sum. The lambda-correction
/// signs in b3 and g2 follow the primary reading; sign_variant flips them
/// (bit 0: b3, bit 1: g2) so a failed primary choice can be retried and the
/// successful variant recorded, never silently.
inline GeneratorAssignment builtin_assignment_F(const EndoAlgebra& E, const FiniteDimAlgebra& S,
                                                int sign_variant = 0) {
    const std::string M1 = std::to_string(S.pres().m - 1);
    const char* s_b3 = (sign_variant & 1) ? "+" : "-";
    const char* s_g2 = (sign_variant & 2) ? "-" : "+";
    GeneratorAssignment g;
    g.note = sign_variant == 0 ? "primary"
                               : "sign variant " + std::to_string(sign_variant) +
                                     " (b3 lambda " + s_b3 + ", g2 lambda " + s_g2 + ")";
    g.arrows["a1"] = E.module_map(1, 2, S.reduce_str("a"));
    g.arrows["a2"] = E.module_map(2, 3, S.reduce_str("b"));
    g.arrows["a3"] = E.module_map(1, 6, S.reduce_str("r"));
    g.arrows["a4"] = E.module_map(6, 3, S.reduce_str("w"));
    g.arrows["b1"] = E.module_map(1, 5, S.reduce_str("r*w - a*b"));
    g.arrows["b3"] = E.module_map(
        1, 4, S.reduce_str("r*w - a*b " + std::string(s_b3) + " l*(a*b*g*s)^" + M1 + "*a*b"));
    g.arrows["b2"] = E.module_map(5, 3, S.idempotent(3));
    g.arrows["b4"] = E.module_map(4, 3, S.idempotent(3));
    g.arrows["g1"] = E.module_map(3, 1, S.reduce_str("n*d"));
    g.arrows["g2"] = E.module_map(
        3, 1, S.reduce_str("g*s " + std::string(s_g2) + " l*(g*s*a*b)^" + M1 + "*g*s"));
    return g;
}

/// Identity assignment for the sum of stalks: arrows of the base quiver map
/// to their own module maps. A self-check that endomorphisms of the
/// projective generator recover the algebra.
inline GeneratorAssignment identity_assignment(const EndoAlgebra& E, const FiniteDimAlgebra& A) {
    GeneratorAssignment g;
    g.note = "identity";
    for (const Arrow& a : A.quiver().arrows())
        g.arrows[a.name] = E.module_map(a.src, a.tgt, A.arrow_elem(a.id));
    return g;
}

}  // namespace bqa
