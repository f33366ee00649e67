#include "qalg/nonextensive.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qalg/deformed_ops.hpp"

namespace qalg {

ProbDist::ProbDist(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("ProbDist: needs at least one entry");
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0)
      throw std::invalid_argument("ProbDist: entries must be finite and non-negative");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > kSumTolerance)
    throw std::invalid_argument("ProbDist: entries must sum to 1");
}

EntropyParams::EntropyParams(double q_value, double k_value) : q(q_value), k(k_value) {
  if (!std::isfinite(q)) throw std::invalid_argument("EntropyParams: q must be finite");
  if (!(k > 0.0) || !std::isfinite(k))
    throw std::invalid_argument("EntropyParams: k must be positive");
}

double tsallis_entropy(const ProbDist& d, const EntropyParams& ep) {
  if (ep.q == 1.0) {
    double s = 0.0;
    for (double p : d.probs())
      if (p > 0.0) s += p * std::log(p);
    return -ep.k * s;
  }
  const double eps = ep.q - 1.0;
  double acc = 0.0;  // sum p_i (p_i^(q-1) - 1) = sum p_i^q - sum p_i
  for (double p : d.probs()) {
    if (p == 0.0) {
      if (ep.q <= 0.0)
        throw std::domain_error("tsallis_entropy: p_i = 0 with q <= 0 is undefined");
      continue;  // 0^q = 0 cancels against the 0 in sum p_i
    }
    acc += p * std::expm1(eps * std::log(p));
  }
  // -k (sum p_i - sum p_i^q)/(1 - q) = -k * acc / eps
  const double s = -ep.k * acc / eps;
  if (!std::isfinite(s)) throw std::range_error("tsallis_entropy: result out of range");
  return s;
}

double info_measure(double p_i, const EntropyParams& ep) {
  if (!(p_i > 0.0) || !std::isfinite(p_i))
    throw std::domain_error("info_measure: probability must be positive");
  const DeformParam deformation(1.0 - ep.q);
  const CheckedValue v = q_ln(deformation, p_i);
  if (!v) throw std::range_error("info_measure: result out of range");
  return ep.k * v.value();
}

double compose(double s_a, double s_b, double lambda) {
  const CheckedValue v = add_a(DeformParam(lambda), s_a, s_b);
  if (!v) throw std::overflow_error("compose: result out of range");
  return v.value();
}

ProbDist product_dist(const ProbDist& a, const ProbDist& b) {
  std::vector<double> joint;
  joint.reserve(a.size() * b.size());
  for (double pa : a.probs())
    for (double pb : b.probs()) joint.push_back(pa * pb);
  return ProbDist(std::move(joint));
}

ProbDist load_distribution(std::istream& in) {
  std::vector<double> probs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    std::size_t end = line.find_last_not_of(" \t\r") + 1;
    const char* first = line.data() + begin;
    const char* last = line.data() + end;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      std::ostringstream msg;
      msg << "distribution line " << line_no << ": not a number: '"
          << std::string(first, last) << "'";
      throw std::invalid_argument(msg.str());
    }
    probs.push_back(value);
  }
  return ProbDist(std::move(probs));
}

ProbDist load_distribution_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open distribution file: " + path);
  return load_distribution(in);
}

}  // namespace qalg
