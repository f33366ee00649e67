// Acceptance suite: one line per criterion, [PASS]/[FAIL], exit code equals
// the number of failed criteria. Criterion 1 drives the CLI binary (path from
// argv[1] or $QALG_CLI); everything else runs against the library.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "qalg/deformed_core.hpp"
#include "qalg/deformed_ops.hpp"
#include "qalg/expr.hpp"
#include "qalg/laws.hpp"
#include "qalg/nonextensive.hpp"
#include "qalg/ratio.hpp"

namespace {

std::string g_cli = "./qalg";

struct CmdResult {
  int status = -1;
  std::string output;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  CmdResult result;
  if (!pipe) return result;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, n);
  const int rc = pclose(pipe);
  result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool close_rel(double a, double b, double tol) {
  const double diff = std::fabs(a - b);
  return diff == 0.0 || diff <= tol * std::max(std::fabs(a), std::fabs(b));
}

// ---------------------------------------------------------------------------

bool criterion1(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();

  const CmdResult ratio = run_cli("ratio 100 110 121");
  if (ratio.status != 0) {
    detail = "ratio exited with " + std::to_string(ratio.status);
    return false;
  }
  const auto lines = lines_of(ratio.output);
  if (lines.size() != 4 || lines[3] != "ratio composition: PASS") {
    detail = "unexpected ratio report";
    return false;
  }
  std::istringstream steps(lines[0].substr(6));
  double s1 = 0.0, s2 = 0.0;
  steps >> s1 >> s2;
  const double composed = std::stod(lines[1].substr(9));
  const double direct = std::stod(lines[2].substr(7));
  if (std::fabs(s1 - 0.1) > 1e-15 || std::fabs(s2 - 0.1) > 1e-15 ||
      std::fabs(composed - 0.21) > 1e-15 || std::fabs(direct - 0.21) > 1e-15) {
    detail = "ratio values off";
    return false;
  }

  const CmdResult eval = run_cli("eval --a 1 \"0.1 @+ 0.1\"");
  if (eval.status != 0 || std::fabs(std::stod(eval.output) - 0.21) > 1e-15) {
    detail = "eval did not print 0.21";
    return false;
  }

  const double elapsed = seconds_since(start);
  std::ostringstream msg;
  msg << "composed=" << composed << ", eval=" << eval.output.substr(0, eval.output.size() - 1)
      << ", " << elapsed << "s";
  detail = msg.str();
  return elapsed < 1.0;
}

bool criterion2(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::string> identities = {
      "assoc_add",   "assoc_mul",   "comm_add",    "comm_mul",    "neutral_add", "neutral_mul",
      "opposite",    "inverse",     "sign_rules",  "gen_add1",    "gen_mul1",    "morphism_2a",
      "morphism_3a", "morphism_4a", "morphism_5a", "morphism_2b", "morphism_3b", "morphism_4b",
      "morphism_5b", "dual_def_9",  "dual_def_10", "distrib_11",  "distrib_12",
  };
  const std::vector<std::string> non_identities = {
      "nondistrib_6", "nondistrib_7", "nondistrib_8", "nondistrib_13",
      "no_absorbing", "dual_anomalies",
  };

  qalg::SampleSpec spec;  // seed 42, 10^4 samples, a in [-2,2] with |a| >= 1e-3
  double worst = 0.0;
  std::string worst_law;
  for (const auto& name : identities) {
    const qalg::OpReport rep = qalg::check_law(name, spec);
    if (rep.verdict != qalg::Verdict::Holds || rep.max_rel_error > 1e-9) {
      detail = name + " max_rel_error=" + std::to_string(rep.max_rel_error);
      return false;
    }
    if (rep.max_rel_error > worst) {
      worst = rep.max_rel_error;
      worst_law = name;
    }
  }
  for (const auto& name : non_identities) {
    const qalg::OpReport rep = qalg::check_law(name, spec);
    if (rep.verdict != qalg::Verdict::Holds || !rep.counterexample) {
      detail = name + ": no counterexample";
      return false;
    }
    if (std::fabs(rep.counterexample->lhs - rep.counterexample->rhs) <= 1e-6) {
      detail = name + ": counterexample gap too small";
      return false;
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream msg;
  msg << "worst identity error " << worst << " (" << worst_law << "), " << elapsed << "s";
  detail = msg.str();
  return elapsed < 30.0;
}

bool criterion3(std::string& detail) {
  const qalg::DeformParam one(1.0);
  if (qalg::inv_a(one, 0.0).value() != 2.0) {
    detail = "inv_a(0) at a=1 is not exactly 2";
    return false;
  }
  if (qalg::inv_a(one, 2.0).value() != 0.0) {
    detail = "inv_a(2) at a=1 is not exactly 0";
    return false;
  }
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> a_draw(-2.0, 2.0);
  std::uniform_real_distribution<double> x_draw(-3.0, 3.0);
  double worst = 0.0;
  int tested = 0;
  while (tested < 100) {
    double a = a_draw(rng);
    if (std::fabs(a) < 1e-3) continue;
    const qalg::DeformParam p(a);
    const double x = x_draw(rng);
    if (!qalg::in_domain_exp(p, x)) continue;
    const auto v = qalg::mul_dual(p, x, 0.0);
    if (!v) continue;
    worst = std::max(worst, std::fabs(v.value()));
    ++tested;
  }
  std::ostringstream msg;
  msg << "worst |x *dual 0| = " << worst;
  detail = msg.str();
  return worst <= 1e-14;
}

bool criterion4(std::string& detail) {
  const auto qexp_bound = [](double a, double tol) {
    const qalg::DeformParam p(a);
    for (int i = 0; i <= 60; ++i) {
      const double x = -3.0 + 6.0 * i / 60.0;
      const double got = qalg::q_exp(p, x).value();
      if (std::fabs(got - std::exp(x)) > tol * std::exp(x)) return false;
    }
    return true;
  };
  const auto qln_bound = [](double a, double tol) {
    const qalg::DeformParam p(a);
    for (int i = 0; i <= 60; ++i) {
      const double x = 0.1 + (10.0 - 0.1) * i / 60.0;
      const double got = qalg::q_ln(p, x).value();
      if (std::fabs(got - std::log(x)) > tol * std::max(1.0, std::fabs(std::log(x))))
        return false;
    }
    return true;
  };

  if (!qexp_bound(1e-6, 1e-5)) {
    detail = "q_exp bound at a=1e-6";
    return false;
  }
  if (!qexp_bound(5e-7, 5e-6)) {  // halving a halves the bound
    detail = "q_exp bound at a=5e-7";
    return false;
  }
  if (!qln_bound(1e-6, 1e-5)) {
    detail = "q_ln bound at a=1e-6";
    return false;
  }
  if (!qln_bound(5e-7, 5e-6)) {
    detail = "q_ln bound at a=5e-7";
    return false;
  }
  detail = "bounds hold at a and a/2 on both grids";
  return true;
}

bool criterion5(std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> q_draw(0.2, 3.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> size_draw(1, 8);

  const auto random_dist = [&](std::size_t size) {
    std::vector<double> p(size);
    double sum = 0.0;
    for (auto& v : p) sum += (v = u(rng));
    for (auto& v : p) v /= sum;
    return qalg::ProbDist(p);
  };

  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double q = q_draw(rng);
    if (q == 1.0) continue;
    const qalg::EntropyParams ep(q, i % 2 == 0 ? 1.0 : 1.380649e-23);
    const qalg::ProbDist a = random_dist(size_draw(rng));
    const qalg::ProbDist b = random_dist(size_draw(rng));
    const double joint = qalg::tsallis_entropy(qalg::product_dist(a, b), ep);
    const double composed =
        qalg::compose(qalg::tsallis_entropy(a, ep), qalg::tsallis_entropy(b, ep), ep.lambda());
    if (!close_rel(joint, composed, 1e-10)) {
      std::ostringstream msg;
      msg << "pair " << i << ": joint=" << joint << " composed=" << composed;
      detail = msg.str();
      return false;
    }
    const double scale = std::max({std::fabs(joint), std::fabs(composed), 1e-300});
    worst = std::max(worst, std::fabs(joint - composed) / scale);
  }

  const double uniform4 =
      qalg::tsallis_entropy(qalg::ProbDist({0.25, 0.25, 0.25, 0.25}), qalg::EntropyParams(2.0));
  if (std::fabs(uniform4 - 0.75) > 1e-12) {
    detail = "uniform-4 at q=2 is not 0.75";
    return false;
  }
  const double elapsed = seconds_since(start);
  std::ostringstream msg;
  msg << "worst relative mismatch " << worst << ", uniform-4 S=" << uniform4 << ", " << elapsed
      << "s";
  detail = msg.str();
  return elapsed < 10.0;
}

bool criterion6(std::string& detail) {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> a_draw(-10.0, 10.0);
  std::uniform_real_distribution<double> x_draw(-20.0, 20.0);
  double worst = 0.0;
  int tested = 0;
  while (tested < 10000) {
    const qalg::DeformParam p(a_draw(rng));
    const double x = x_draw(rng);
    const auto ex = qalg::q_exp(p, x);
    if (!ex) continue;
    const auto back = qalg::q_ln(p, ex.value());
    if (!back) {
      detail = "q_ln failed on a q_exp value";
      return false;
    }
    worst = std::max(worst,
                     std::fabs(back.value() - x) / std::max(1.0, std::fabs(x)));
    ++tested;
  }
  if (worst > 1e-10) {
    std::ostringstream msg;
    msg << "inverse-pair error " << worst;
    detail = msg.str();
    return false;
  }

  using namespace qalg::expr;
  std::uniform_int_distribution<int> depth_draw(1, 12);
  std::uniform_int_distribution<int> pick_shallow(0, 1), pick_deep(0, 4);
  std::uniform_real_distribution<double> num(0.0, 10.0);
  std::uniform_int_distribution<int> var_pick(0, 2), op_pick(0, 9), un_pick(0, 1), fn_pick(0, 3);

  const std::function<ExprPtr(int)> random_tree = [&](int depth) -> ExprPtr {
    auto e = std::make_unique<Expr>();
    const int what = depth <= 1 ? pick_shallow(rng) : pick_deep(rng);
    switch (what) {
      case 0: e->node = NumberLit{num(rng)}; break;
      case 1: {
        const char* names[] = {"x", "y", "z"};
        e->node = Var{names[var_pick(rng)]};
        break;
      }
      case 2: e->node = Unary{static_cast<UnaryOp>(un_pick(rng)), random_tree(depth - 1)}; break;
      case 3:
        e->node = Binary{static_cast<BinaryOp>(op_pick(rng)), random_tree(depth - 1),
                         random_tree(depth - 1)};
        break;
      default: e->node = Call{static_cast<FuncKind>(fn_pick(rng)), random_tree(depth - 1)}; break;
    }
    return e;
  };

  for (int i = 0; i < 1000; ++i) {
    const ExprPtr tree = random_tree(depth_draw(rng));
    ParseOptions opts;
    opts.max_depth = 4096;
    const ExprPtr back = parse_text(pretty_print(*tree), opts);
    if (!structurally_equal(*tree, *back)) {
      detail = "round-trip mismatch: " + pretty_print(*tree);
      return false;
    }
  }
  std::ostringstream msg;
  msg << "inverse-pair error " << worst << ", 1000 trees round-tripped";
  detail = msg.str();
  return true;
}

bool criterion7(std::string& detail) {
  using qalg::DomainViolation;
  for (double a : {1.0, 0.5, -2.0}) {
    const qalg::DeformParam p(a);
    const double y = -1.0 / a;
    if (!qalg::sub_a(p, 3.0, y).failed_with(DomainViolation::SingularDenominator)) {
      detail = "sub_a at the singular point did not report SingularDenominator";
      return false;
    }
  }
  if (!qalg::mul_a(qalg::DeformParam(1.0), 0.3, 0.4).failed_with(DomainViolation::NonPositiveBase)) {
    detail = "mul_a(0.3, 0.4) at a=1 did not report NonPositiveBase";
    return false;
  }

  // strict and cutoff must differ exactly on non-positive brackets with
  // 1/a > 0, and nowhere else
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> a_draw(-2.0, 2.0);
  std::uniform_real_distribution<double> x_draw(-10.0, 10.0);
  int cutoff_cases = 0;
  for (int i = 0; i < 10000; ++i) {
    double a = a_draw(rng);
    double x = x_draw(rng);
    if (i == 0) { a = 1.0; x = -1.0; }   // exact boundary bracket
    if (i == 1) { a = 2.0; x = -0.5; }
    if (i == 2) { a = 0.5; x = -2.0; }
    if (i == 3) { a = 0.0; x = -5.0; }
    const qalg::DeformParam p(a);
    const auto strict = qalg::q_exp(p, x, qalg::EvalPolicy::Strict);
    const auto cutoff = qalg::q_exp(p, x, qalg::EvalPolicy::Cutoff);
    const bool in_domain = qalg::in_domain_exp(p, x);
    if (in_domain) {
      if (!strict || !cutoff || strict.value() != cutoff.value()) {
        detail = "policies diverged inside the domain";
        return false;
      }
    } else if (a > 0.0) {
      ++cutoff_cases;
      if (!strict.failed_with(DomainViolation::NonPositiveBracket) || !cutoff ||
          cutoff.value() != 0.0) {
        detail = "cutoff did not map the non-positive bracket to 0";
        return false;
      }
    } else {
      if (!strict.failed_with(DomainViolation::NonPositiveBracket) ||
          !cutoff.failed_with(DomainViolation::NonPositiveBracket)) {
        detail = "strict/cutoff disagree where both must reject";
        return false;
      }
    }
  }
  std::ostringstream msg;
  msg << cutoff_cases << " cutoff-only cases exercised";
  detail = msg.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) {
    g_cli = argv[1];
  } else if (const char* env = std::getenv("QALG_CLI")) {
    g_cli = env;
  }

  struct Criterion {
    int index;
    const char* title;
    bool (*run)(std::string&);
  };
  const Criterion criteria[] = {
      {1, "two-step ratio chain reproduced through the CLI", criterion1},
      {2, "law suite holds at seed 42 with 10^4 samples per law", criterion2},
      {3, "explicit inverse-of-zero values and the absorbing dual zero", criterion3},
      {4, "classical-limit convergence is linear in a", criterion4},
      {5, "pseudo-additivity over 1000 random product distributions", criterion5},
      {6, "inverse-pair identity and parser round-trip", criterion6},
      {7, "domain-error taxonomy and strict/cutoff policy split", criterion7},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::string detail;
    const bool pass = c.run(detail);
    if (!pass) ++failures;
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", c.index, c.title,
                detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
  }
  if (failures == 0)
    std::printf("all %zu criteria passed\n", sizeof(criteria) / sizeof(criteria[0]));
  else
    std::printf("%d criteria FAILED\n", failures);
  return failures;
}
