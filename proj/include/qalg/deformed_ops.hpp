#pragma once

#include "qalg/deformed_core.hpp"

namespace qalg {

// The eight deformed operators. The subscript family (add_a, sub_a, mul_a,
// div_a plus the derived neg_a/inv_a element constructors) makes the four
// q_exp/q_ln morphisms hold; the dual family (add_dual, mul_dual) restores
// mixed distributivity with the subscript family. All of them collapse to
// the classical operators at a == 0 and are pure functions of their
// arguments.

/// x + y + a*x*y. Total on finite inputs; 0 is its neutral element.
CheckedValue add_a(const DeformParam& p, double x, double y);

/// (x - y) / (1 + a*y). Singular at y == -1/a.
CheckedValue sub_a(const DeformParam& p, double x, double y);

/// Opposite element -x / (1 + a*x); equals sub_a(0, x). The point x == -1/a
/// has no opposite.
CheckedValue neg_a(const DeformParam& p, double x);

/// (x^a + y^a - 1)^(1/a) for x, y > 0, requiring x^a + y^a - 1 > 0.
/// 1 is its neutral element (exactly); there is no absorbing element.
CheckedValue mul_a(const DeformParam& p, double x, double y);

/// (x^a - y^a + 1)^(1/a) for x, y > 0, requiring a positive base.
CheckedValue div_a(const DeformParam& p, double x, double y);

/// Inverse element (2 - x^a)^(1/a).
///
/// For a > 0 this extends to the boundary: inv_a(0) = 2^(1/a) and the
/// argument with x^a == 2 maps to exactly 0, so zero is invertible.
CheckedValue inv_a(const DeformParam& p, double x);

/// Dual product (e^(ln(1+a*x)ln(1+a*y)/a) - 1) / a on the bracket domain.
/// Note mul_dual(x, 0) == 0 while mul_dual(x, 1) != x in general.
CheckedValue mul_dual(const DeformParam& p, double x, double y);

/// Dual sum [a ln(e^(x^a/a) + e^(y^a/a))]^(1/a) for x, y > 0.
///
/// The inner exponentials are combined in shifted (log-sum-exp) form, so the
/// operation does not overflow spuriously. Note add_dual(x, y) does not tend
/// to x as y -> 0+.
CheckedValue add_dual(const DeformParam& p, double x, double y);

}  // namespace qalg
