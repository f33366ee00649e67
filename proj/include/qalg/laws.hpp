#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qalg {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Deterministic sampling plan for one law check. Identical specs replay the
/// identical sample sequence; per-sample streams are derived from (seed,
/// sample index), so evaluation order cannot change a report.
struct SampleSpec {
  std::uint64_t seed = 42;
  std::size_t count = 10000;
  Interval a_range{-2.0, 2.0};
  Interval x_range{-3.0, 3.0};
  double a_exclusion = 1e-3;  ///< draws with |a| below this are rejected
};

enum class Verdict { Holds, Fails };

struct Counterexample {
  std::size_t sample_index = 0;
  std::vector<double> inputs;  ///< leading entry is the deformation parameter
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Outcome of checking one law over a sample plan.
///
/// For identity laws, Holds means max_rel_error <= tolerance over all
/// samples. For laws that assert a non-identity, Holds means a concrete
/// counterexample with |lhs - rhs| > tolerance was found (and is attached);
/// max_rel_error is reported as 0 for those.
struct OpReport {
  std::string law_name;
  std::size_t samples_tested = 0;
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  std::vector<double> worst_case_inputs;
  Verdict verdict = Verdict::Fails;
  double tolerance = 0.0;
  bool expects_counterexample = false;
  std::optional<Counterexample> counterexample;
};

struct UnknownLawError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Stable identifiers of every law in the registry, in registry order.
const std::vector<std::string>& law_names();

bool is_known_law(std::string_view name);

/// Samples the law's domain per the sampling plan and reports the verdict.
/// Throws UnknownLawError for identifiers outside the registry.
OpReport check_law(std::string_view law, const SampleSpec& spec = {});

/// |lhs - rhs| scaled by max(1, |lhs|, |rhs|): relative above magnitude 1,
/// absolute below. This is the error metric the reports quote.
double relative_gap(double lhs, double rhs);

}  // namespace qalg
