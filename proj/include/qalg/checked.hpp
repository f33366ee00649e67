#pragma once

#include <cmath>
#include <stdexcept>

namespace qalg {

/// Why a partial operation rejected its inputs. The same tags are used by
/// every operator in the library, so callers (and the expression evaluator)
/// can map them uniformly.
enum class DomainViolation {
  NonPositiveBracket,   ///< 1 + a*x must be positive and is not
  NonPositiveArgument,  ///< operand restricted to positive reals (or a valid zero case)
  NonPositiveBase,      ///< the base of a real power t^(1/a) is not positive
  SingularDenominator,  ///< 1 + a*y == 0, the singular point of the deformed difference
  Overflow,             ///< result magnitude left the finite double range (includes full underflow)
};

const char* to_string(DomainViolation v);

/// Result of a partial deformed operation: either a finite double or a
/// DomainViolation. A value outcome is always finite; NaN or infinity never
/// escapes as a "value".
class CheckedValue {
 public:
  static CheckedValue ok(double v) {
    CheckedValue r;
    r.has_value_ = true;
    r.value_ = v;
    return r;
  }

  static CheckedValue fail(DomainViolation tag) {
    CheckedValue r;
    r.violation_ = tag;
    return r;
  }

  bool has_value() const { return has_value_; }
  explicit operator bool() const { return has_value_; }

  double value() const {
    if (!has_value_) throw std::logic_error("CheckedValue: no value");
    return value_;
  }

  double value_or(double fallback) const { return has_value_ ? value_ : fallback; }

  DomainViolation violation() const {
    if (has_value_) throw std::logic_error("CheckedValue: no violation");
    return violation_;
  }

  bool failed_with(DomainViolation tag) const {
    return !has_value_ && violation_ == tag;
  }

 private:
  CheckedValue() = default;
  bool has_value_ = false;
  double value_ = 0.0;
  DomainViolation violation_ = DomainViolation::Overflow;
};

/// Wraps a computed double, demoting non-finite results to Overflow.
inline CheckedValue checked(double v) {
  if (!std::isfinite(v)) return CheckedValue::fail(DomainViolation::Overflow);
  return CheckedValue::ok(v);
}

/// Like checked(), but additionally rejects a result that underflowed to
/// zero; used by operations whose exact result is strictly positive.
inline CheckedValue checked_positive(double v) {
  if (!std::isfinite(v) || v <= 0.0) return CheckedValue::fail(DomainViolation::Overflow);
  return CheckedValue::ok(v);
}

}  // namespace qalg
