#pragma once

#include <span>
#include <vector>

namespace qalg {

/// Per-step growth ratios of a positive value chain, their composition under
/// the deformed addition at a = 1, and the direct overall ratio. The two
/// agree for any chain: the a = 1 addition is exactly how relative ratios
/// combine.
struct RatioReport {
  std::vector<double> steps;  ///< y_i = (x_{i+1} - x_i) / x_i
  double composed = 0.0;      ///< left fold of the steps under the a = 1 addition
  double direct = 0.0;        ///< (x_n - x_0) / x_0
  bool pass = false;          ///< composed == direct within 1e-12 (relative, floored at 1)
};

/// Throws std::invalid_argument unless the chain has >= 2 entries, all
/// positive and finite.
RatioReport analyze_ratio_chain(std::span<const double> values);

}  // namespace qalg
