#pragma once

#include "qalg/checked.hpp"

namespace qalg {

/// Deformation parameter of the generalized exponential/logarithm pair.
///
/// a == 0 selects the classical functions (exp, ln) and operators (+, *)
/// exactly. For 0 < |a| <= epsilon_limit the evaluation routines are
/// guaranteed to use cancellation-free small-a forms built on log1p/expm1;
/// operators that have a distinct fast general path switch on this
/// threshold.
struct DeformParam {
  double a = 0.0;
  double epsilon_limit = 1e-8;

  DeformParam() = default;
  explicit DeformParam(double a_value, double epsilon = 1e-8);

  bool classical() const { return a == 0.0; }
  bool small_a() const { return !classical() && std::fabs(a) <= epsilon_limit; }
};

/// How q_exp treats an out-of-domain bracket.
///
/// Strict  - every violation is reported as such.
/// Cutoff  - a non-positive bracket with 1/a > 0 evaluates to 0; everything
///           else is still an error.
enum class EvalPolicy { Strict, Cutoff };

/// Generalized exponential (1 + a*x)^(1/a).
///
/// Defined on the bracket domain 1 + a*x > 0; reduces to exp(x) at a == 0.
/// The result is strictly positive whenever it is defined (under Strict).
CheckedValue q_exp(const DeformParam& p, double x, EvalPolicy policy = EvalPolicy::Strict);

/// Generalized logarithm (x^a - 1) / a, the inverse of q_exp.
///
/// Defined for x > 0; reduces to ln(x) at a == 0.
CheckedValue q_ln(const DeformParam& p, double x);

/// Membership in the definition set of q_exp: 1 + a*x > 0 (all reals at a == 0).
bool in_domain_exp(const DeformParam& p, double x);

}  // namespace qalg
