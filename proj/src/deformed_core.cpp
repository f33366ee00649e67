#include "qalg/deformed_core.hpp"

#include <cmath>
#include <stdexcept>

namespace qalg {

const char* to_string(DomainViolation v) {
  switch (v) {
    case DomainViolation::NonPositiveBracket: return "NonPositiveBracket";
    case DomainViolation::NonPositiveArgument: return "NonPositiveArgument";
    case DomainViolation::NonPositiveBase: return "NonPositiveBase";
    case DomainViolation::SingularDenominator: return "SingularDenominator";
    case DomainViolation::Overflow: return "Overflow";
  }
  return "Unknown";
}

DeformParam::DeformParam(double a_value, double epsilon) : a(a_value), epsilon_limit(epsilon) {
  if (!std::isfinite(a)) throw std::invalid_argument("DeformParam: a must be finite");
  if (!(epsilon_limit > 0.0) || !std::isfinite(epsilon_limit))
    throw std::invalid_argument("DeformParam: epsilon_limit must be positive");
}

CheckedValue q_exp(const DeformParam& p, double x, EvalPolicy policy) {
  if (!std::isfinite(x)) return CheckedValue::fail(DomainViolation::Overflow);
  if (p.classical()) return checked_positive(std::exp(x));

  const double w = p.a * x;
  if (!(w > -1.0)) {
    if (policy == EvalPolicy::Cutoff && p.a > 0.0) return CheckedValue::ok(0.0);
    return CheckedValue::fail(DomainViolation::NonPositiveBracket);
  }
  // exp(log1p(a*x)/a) evaluates (1+a*x)^(1/a) without forming 1+a*x, which
  // keeps full precision both for small |a| and near the bracket boundary.
  return checked_positive(std::exp(std::log1p(w) / p.a));
}

CheckedValue q_ln(const DeformParam& p, double x) {
  if (!std::isfinite(x)) return CheckedValue::fail(DomainViolation::Overflow);
  if (x <= 0.0) return CheckedValue::fail(DomainViolation::NonPositiveArgument);
  if (p.classical()) return checked(std::log(x));
  // expm1(a*ln x)/a == (x^a - 1)/a, exact through the a -> 0 limit.
  return checked(std::expm1(p.a * std::log(x)) / p.a);
}

bool in_domain_exp(const DeformParam& p, double x) {
  if (std::isnan(x)) return false;
  if (p.classical()) return true;
  return p.a * x > -1.0;
}

}  // namespace qalg
