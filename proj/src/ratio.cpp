#include "qalg/ratio.hpp"

#include <cmath>
#include <stdexcept>

#include "qalg/deformed_ops.hpp"
#include "qalg/laws.hpp"

namespace qalg {

RatioReport analyze_ratio_chain(std::span<const double> values) {
  if (values.size() < 2)
    throw std::invalid_argument("ratio chain needs at least two values");
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("ratio chain values must be positive and finite");

  RatioReport report;
  report.steps.reserve(values.size() - 1);
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    report.steps.push_back((values[i + 1] - values[i]) / values[i]);

  const DeformParam one(1.0);
  double acc = report.steps.front();
  for (std::size_t i = 1; i < report.steps.size(); ++i) {
    const CheckedValue next = add_a(one, acc, report.steps[i]);
    if (!next) throw std::invalid_argument("ratio chain composition overflowed");
    acc = next.value();
  }
  report.composed = acc;
  report.direct = (values.back() - values.front()) / values.front();
  report.pass = relative_gap(report.composed, report.direct) <= 1e-12;
  return report;
}

}  // namespace qalg
