#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qalg {

/// Finite discrete probability distribution. Validated on construction:
/// at least one entry, every entry non-negative and the total within 1e-9
/// of one. Violations throw std::invalid_argument.
class ProbDist {
 public:
  static constexpr double kSumTolerance = 1e-9;

  explicit ProbDist(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

/// Entropic index q and scale constant k (> 0). q == 1 selects the
/// classical Shannon-Gibbs limit.
struct EntropyParams {
  double q = 1.0;
  double k = 1.0;

  EntropyParams() = default;
  explicit EntropyParams(double q_value, double k_value = 1.0);

  /// Composition coefficient (1 - q)/k: the deformation parameter under
  /// which the entropy of independent subsystems adds up via compose().
  double lambda() const { return (1.0 - q) / k; }
};

/// Nonextensive entropy -k (sum p_i - sum p_i^q) / (1 - q).
///
/// At q == 1 this is the Shannon-Gibbs limit -k sum p_i ln p_i. Entries with
/// p_i == 0 contribute nothing for q > 0 (convention 0^q = 0); q <= 0 with a
/// zero entry present throws std::domain_error (undefined power).
double tsallis_entropy(const ProbDist& d, const EntropyParams& ep);

/// Generalized information measure k * ln_{1-q}(p_i) = k (p_i^(1-q) - 1)/(1-q).
/// Requires p_i > 0 (std::domain_error otherwise); k * ln(p_i) at q == 1.
double info_measure(double p_i, const EntropyParams& ep);

/// Pseudo-additive composition s_a + s_b + lambda * s_a * s_b, i.e. the
/// deformed addition at deformation parameter lambda. Serves both entropy
/// (lambda = (1-q)/k) and energy composition. Throws std::overflow_error if
/// the result leaves the finite range.
double compose(double s_a, double s_b, double lambda);

/// Joint distribution of two independent systems: entries p_i * r_j in
/// row-major order.
ProbDist product_dist(const ProbDist& a, const ProbDist& b);

/// Reads the text distribution format: one probability per line, '#' starts
/// a comment, blank lines ignored. Validation as in ProbDist.
ProbDist load_distribution(std::istream& in);

/// Same, from a file path. Throws std::runtime_error if the file cannot be
/// opened or parsed.
ProbDist load_distribution_file(const std::string& path);

}  // namespace qalg
