#include "qalg/deformed_ops.hpp"

#include <cmath>

namespace qalg {

namespace {

bool all_finite(double x) { return std::isfinite(x); }
bool all_finite(double x, double y) { return std::isfinite(x) && std::isfinite(y); }

}  // namespace

CheckedValue add_a(const DeformParam& p, double x, double y) {
  if (!all_finite(x, y)) return CheckedValue::fail(DomainViolation::Overflow);
  return checked(x + y + p.a * x * y);
}

CheckedValue sub_a(const DeformParam& p, double x, double y) {
  if (!all_finite(x, y)) return CheckedValue::fail(DomainViolation::Overflow);
  const double den = 1.0 + p.a * y;
  if (den == 0.0) return CheckedValue::fail(DomainViolation::SingularDenominator);
  return checked((x - y) / den);
}

CheckedValue neg_a(const DeformParam& p, double x) {
  if (!all_finite(x)) return CheckedValue::fail(DomainViolation::Overflow);
  const double den = 1.0 + p.a * x;
  if (den == 0.0) return CheckedValue::fail(DomainViolation::SingularDenominator);
  return checked(-x / den);
}

CheckedValue mul_a(const DeformParam& p, double x, double y) {
  if (!all_finite(x, y)) return CheckedValue::fail(DomainViolation::Overflow);
  if (x <= 0.0 || y <= 0.0) return CheckedValue::fail(DomainViolation::NonPositiveArgument);
  if (p.classical()) return checked(x * y);
  if (y == 1.0) return CheckedValue::ok(x);  // exact neutral element
  if (x == 1.0) return CheckedValue::ok(y);

  // x^a + y^a - 1 == 1 + (u + v) with u = x^a - 1, v = y^a - 1; keeping the
  // offsets avoids the cancellation in the direct sum for small |a|.
  const double u = std::expm1(p.a * std::log(x));
  const double v = std::expm1(p.a * std::log(y));
  if (!all_finite(u, v)) return CheckedValue::fail(DomainViolation::Overflow);
  const double s = u + v;
  if (!(s > -1.0)) return CheckedValue::fail(DomainViolation::NonPositiveBase);
  return checked_positive(std::exp(std::log1p(s) / p.a));
}

CheckedValue div_a(const DeformParam& p, double x, double y) {
  if (!all_finite(x, y)) return CheckedValue::fail(DomainViolation::Overflow);
  if (x <= 0.0 || y <= 0.0) return CheckedValue::fail(DomainViolation::NonPositiveArgument);
  if (p.classical()) return checked(x / y);

  const double u = std::expm1(p.a * std::log(x));
  const double v = std::expm1(p.a * std::log(y));
  if (!all_finite(u, v)) return CheckedValue::fail(DomainViolation::Overflow);
  const double s = u - v;  // x^a - y^a
  if (!(s > -1.0)) return CheckedValue::fail(DomainViolation::NonPositiveBase);
  return checked_positive(std::exp(std::log1p(s) / p.a));
}

CheckedValue inv_a(const DeformParam& p, double x) {
  if (!all_finite(x)) return CheckedValue::fail(DomainViolation::Overflow);
  if (x < 0.0) return CheckedValue::fail(DomainViolation::NonPositiveArgument);
  if (x == 0.0) {
    // 0^a = 0 only makes sense for a > 0, where the inverse of zero is the
    // finite value 2^(1/a).
    if (!(p.a > 0.0)) return CheckedValue::fail(DomainViolation::NonPositiveArgument);
    return checked_positive(std::pow(2.0, 1.0 / p.a));
  }
  if (p.classical()) return checked(1.0 / x);

  // The log-space form stays accurate for small |a|, where pow would
  // amplify the last-place error of 2 - x^a by 1/a.
  if (std::fabs(p.a) < 0.5) {
    const double u = std::expm1(p.a * std::log(x));  // x^a - 1
    if (!std::isfinite(u)) return CheckedValue::fail(DomainViolation::Overflow);
    if (u > 1.0) return CheckedValue::fail(DomainViolation::NonPositiveBase);
    if (u == 1.0)
      return p.a > 0.0 ? CheckedValue::ok(0.0)
                       : CheckedValue::fail(DomainViolation::NonPositiveBase);
    return checked_positive(std::exp(std::log1p(-u) / p.a));
  }

  // pow keeps the IEEE special cases (pow(t, 1) == t), so e.g. at a == 1 the
  // inverse of 2 is exactly 0 and the inverse of 0 is exactly 2.
  const double t = std::pow(x, p.a);
  if (!std::isfinite(t)) return CheckedValue::fail(DomainViolation::Overflow);
  const double base = 2.0 - t;
  if (base < 0.0) return CheckedValue::fail(DomainViolation::NonPositiveBase);
  if (base == 0.0)
    return p.a > 0.0 ? CheckedValue::ok(0.0)
                     : CheckedValue::fail(DomainViolation::NonPositiveBase);
  return checked_positive(std::pow(base, 1.0 / p.a));
}

CheckedValue mul_dual(const DeformParam& p, double x, double y) {
  if (!all_finite(x, y)) return CheckedValue::fail(DomainViolation::Overflow);
  if (p.classical()) return checked(x * y);
  if (!in_domain_exp(p, x) || !in_domain_exp(p, y))
    return CheckedValue::fail(DomainViolation::NonPositiveBracket);
  const double t = std::log1p(p.a * x) * std::log1p(p.a * y) / p.a;
  return checked(std::expm1(t) / p.a);
}

CheckedValue add_dual(const DeformParam& p, double x, double y) {
  if (!all_finite(x, y)) return CheckedValue::fail(DomainViolation::Overflow);
  if (p.classical()) return checked(x + y);
  if (x <= 0.0 || y <= 0.0) return CheckedValue::fail(DomainViolation::NonPositiveArgument);

  const double ux = std::expm1(p.a * std::log(x));  // x^a - 1
  const double uy = std::expm1(p.a * std::log(y));
  if (!all_finite(ux, uy)) return CheckedValue::fail(DomainViolation::Overflow);

  // bracket = a*ln(e^(x^a/a) + e^(y^a/a)); with the larger term factored out
  // this is 1 + u_max + a*log1p(exp(-|x^a - y^a|/a)), free of spurious
  // overflow and accurate through small |a|.
  const double delta = (ux - uy) / p.a;  // (x^a - y^a)/a, sign tells which side dominates
  const double off =
      delta >= 0.0 ? ux + p.a * std::log1p(std::exp(-delta)) : uy + p.a * std::log1p(std::exp(delta));
  if (!std::isfinite(off)) return CheckedValue::fail(DomainViolation::Overflow);
  if (!(off > -1.0)) return CheckedValue::fail(DomainViolation::NonPositiveBase);
  return checked_positive(std::exp(std::log1p(off) / p.a));
}

}  // namespace qalg
