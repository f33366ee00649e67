#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "qalg/deformed_core.hpp"
#include "qalg/expr.hpp"
#include "qalg/laws.hpp"
#include "qalg/nonextensive.hpp"
#include "qalg/ratio.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kDomain = 2;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// `*` and `?` wildcards, anchored on both ends.
bool glob_match(std::string_view pattern, std::string_view text) {
  std::size_t p = 0, t = 0;
  std::size_t star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

void diagnostic(const std::string& source, std::size_t begin, std::size_t end,
                const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  std::fprintf(stderr, "  %s\n", source.c_str());
  if (begin > source.size()) begin = source.size();
  if (end <= begin) end = begin + 1;
  std::string carets(2 + begin, ' ');
  carets.append(end - begin, '^');
  std::fprintf(stderr, "%s\n", carets.c_str());
}

bool valid_var_name(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// ---------------------------------------------------------------------------

int run_eval(double a, const std::string& policy, const std::vector<std::string>& var_defs,
             const std::string& text) {
  if (!std::isfinite(a)) {
    std::fprintf(stderr, "error: --a must be finite\n");
    return kUsage;
  }
  qalg::expr::EvalEnv env;
  env.deformation = qalg::DeformParam(a);
  env.policy = policy == "cutoff" ? qalg::EvalPolicy::Cutoff : qalg::EvalPolicy::Strict;
  for (const std::string& def : var_defs) {
    const std::size_t eq = def.find('=');
    if (eq == std::string::npos || !valid_var_name(def.substr(0, eq))) {
      std::fprintf(stderr, "error: --var expects name=value, got '%s'\n", def.c_str());
      return kUsage;
    }
    try {
      std::size_t used = 0;
      const double value = std::stod(def.substr(eq + 1), &used);
      if (used != def.size() - eq - 1 || !std::isfinite(value)) throw std::invalid_argument(def);
      env.bindings[def.substr(0, eq)] = value;
    } catch (const std::exception&) {
      std::fprintf(stderr, "error: --var %s: value is not a finite number\n", def.c_str());
      return kUsage;
    }
  }

  qalg::expr::ExprPtr tree;
  try {
    tree = qalg::expr::parse_text(text);
  } catch (const qalg::expr::LexError& e) {
    diagnostic(text, e.offset(), e.offset() + 1, e.what());
    return kUsage;
  } catch (const qalg::expr::ParseError& e) {
    diagnostic(text, e.offset(), e.offset() + 1, e.what());
    return kUsage;
  }

  const qalg::expr::EvalResult result = qalg::expr::evaluate(*tree, env);
  if (!result) {
    const auto& err = result.error();
    diagnostic(text, err.span.begin, err.span.end, err.message());
    return kDomain;
  }
  std::printf("%.17g\n", result.value());
  return kOk;
}

int run_laws(std::uint64_t seed, std::size_t count, double a_min, double a_max,
             const std::string& selector) {
  if (!(a_min < a_max) || !std::isfinite(a_min) || !std::isfinite(a_max)) {
    std::fprintf(stderr, "error: need finite --a-min < --a-max\n");
    return kUsage;
  }
  std::vector<std::string> selected;
  for (const std::string& name : qalg::law_names())
    if (glob_match(selector, name)) selected.push_back(name);
  if (selected.empty()) {
    std::fprintf(stderr, "error: no law matches selector '%s'\n", selector.c_str());
    return kUsage;
  }

  qalg::SampleSpec spec;
  spec.seed = seed;
  spec.count = count;
  spec.a_range = {a_min, a_max};

  bool all_expected = true;
  for (const std::string& name : selected) {
    const qalg::OpReport rep = qalg::check_law(name, spec);
    if (rep.verdict != qalg::Verdict::Holds) all_expected = false;
    std::string line = rep.law_name + ": ";
    line += rep.verdict == qalg::Verdict::Holds ? "holds" : "FAILS";
    if (rep.expects_counterexample) {
      if (rep.counterexample) {
        const auto& ce = *rep.counterexample;
        line += "  counterexample at sample " + std::to_string(ce.sample_index) + ": inputs=(";
        for (std::size_t i = 0; i < ce.inputs.size(); ++i) {
          if (i) line += ", ";
          line += g17(ce.inputs[i]);
        }
        line += ") lhs=" + g17(ce.lhs) + " rhs=" + g17(ce.rhs) +
                " gap=" + g17(std::fabs(ce.lhs - ce.rhs));
      } else {
        line += "  no counterexample in " + std::to_string(rep.samples_tested) + " samples";
      }
    } else {
      line += "  max_rel_error=" + g17(rep.max_rel_error) +
              " samples=" + std::to_string(rep.samples_tested);
      if (rep.verdict != qalg::Verdict::Holds && !rep.worst_case_inputs.empty()) {
        line += " worst=(";
        for (std::size_t i = 0; i < rep.worst_case_inputs.size(); ++i) {
          if (i) line += ", ";
          line += g17(rep.worst_case_inputs[i]);
        }
        line += ")";
      }
    }
    std::printf("%s\n", line.c_str());
  }
  return all_expected ? kOk : kDomain;
}

int run_ratio(const std::vector<double>& values) {
  qalg::RatioReport report;
  try {
    report = qalg::analyze_ratio_chain(values);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kDomain;
  }
  std::string steps;
  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    if (i) steps += ' ';
    steps += g17(report.steps[i]);
  }
  std::printf("steps: %s\n", steps.c_str());
  std::printf("composed: %s\n", g17(report.composed).c_str());
  std::printf("direct: %s\n", g17(report.direct).c_str());
  std::printf("ratio composition: %s\n", report.pass ? "PASS" : "FAIL");
  return report.pass ? kOk : kDomain;
}

int run_entropy(double q, double k, const std::vector<std::string>& files) {
  qalg::EntropyParams params;
  try {
    params = qalg::EntropyParams(q, k);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  std::vector<qalg::ProbDist> dists;
  for (const std::string& path : files) {
    try {
      dists.push_back(qalg::load_distribution_file(path));
    } catch (const std::runtime_error& e) {  // I/O
      std::fprintf(stderr, "error: %s\n", e.what());
      return kUsage;
    } catch (const std::invalid_argument& e) {  // content
      std::fprintf(stderr, "error: %s: %s\n", path.c_str(), e.what());
      return kDomain;
    }
  }
  try {
    std::vector<double> entropies;
    for (std::size_t i = 0; i < dists.size(); ++i) {
      entropies.push_back(qalg::tsallis_entropy(dists[i], params));
      std::printf("S(%s) = %s\n", i == 0 ? "A" : "B", g17(entropies[i]).c_str());
    }
    if (dists.size() == 2) {
      const double joint = qalg::tsallis_entropy(qalg::product_dist(dists[0], dists[1]), params);
      const double composed = qalg::compose(entropies[0], entropies[1], params.lambda());
      std::printf("S(joint) = %s\n", g17(joint).c_str());
      std::printf("S(composed) = %s\n", g17(composed).c_str());
      const bool pass = qalg::relative_gap(joint, composed) <= 1e-10;
      std::printf("pseudo-additivity: %s\n", pass ? "PASS" : "FAIL");
      if (!pass) return kDomain;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kDomain;
  }
  return kOk;
}

int run_table(const std::string& fn, double a, double lo, double hi, std::size_t steps) {
  if (!std::isfinite(a) || !std::isfinite(lo) || !std::isfinite(hi) || lo > hi || steps < 2) {
    std::fprintf(stderr, "error: need finite --a, finite --min <= --max and --steps >= 2\n");
    return kUsage;
  }
  const qalg::DeformParam p(a);
  std::printf("x,value,status\n");
  for (std::size_t i = 0; i < steps; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    const qalg::CheckedValue v = fn == "qexp" ? qalg::q_exp(p, x) : qalg::q_ln(p, x);
    if (v)
      std::printf("%s,%s,ok\n", g17(x).c_str(), g17(v.value()).c_str());
    else
      std::printf("%s,,%s\n", g17(x).c_str(), qalg::to_string(v.violation()));
  }
  return kOk;
}

}  // namespace

int run_app(int argc, char** argv) {
  CLI::App app{"deformed arithmetic, law checking and nonextensive entropy"};
  app.require_subcommand(1);
  int rc = kOk;

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression");
  double eval_a = 0.0;
  std::string eval_policy = "strict";
  std::vector<std::string> eval_vars;
  std::string eval_text;
  eval_cmd->add_option("--a", eval_a, "deformation parameter")->required();
  eval_cmd->add_option("--policy", eval_policy, "strict|cutoff")
      ->check(CLI::IsMember({"strict", "cutoff"}));
  eval_cmd->add_option("--var", eval_vars, "variable binding name=value");
  eval_cmd->add_option("expr", eval_text, "expression text")->required();
  eval_cmd->callback([&]() { rc = run_eval(eval_a, eval_policy, eval_vars, eval_text); });

  // laws
  auto* laws_cmd = app.add_subcommand("laws", "check algebraic laws on seeded samples");
  std::uint64_t laws_seed = 42;
  std::size_t laws_count = 10000;
  double laws_a_min = -2.0, laws_a_max = 2.0;
  std::string laws_selector;
  laws_cmd->add_option("--seed", laws_seed, "sampling seed");
  laws_cmd->add_option("--count", laws_count, "samples per law");
  laws_cmd->add_option("--a-min", laws_a_min, "lower end of the a range");
  laws_cmd->add_option("--a-max", laws_a_max, "upper end of the a range");
  laws_cmd->add_option("selector", laws_selector, "law name or glob (* and ?)")->required();
  laws_cmd->callback(
      [&]() { rc = run_laws(laws_seed, laws_count, laws_a_min, laws_a_max, laws_selector); });

  // ratio
  auto* ratio_cmd = app.add_subcommand("ratio", "compose per-step growth ratios of a value chain");
  std::vector<double> ratio_values;
  ratio_cmd->add_option("values", ratio_values, "chain of positive values")
      ->required()
      ->expected(2, -1);
  ratio_cmd->callback([&]() { rc = run_ratio(ratio_values); });

  // entropy
  auto* entropy_cmd = app.add_subcommand("entropy", "nonextensive entropy of distributions");
  double entropy_q = 1.0, entropy_k = 1.0;
  std::vector<std::string> entropy_files;
  entropy_cmd->add_option("--q", entropy_q, "entropic index")->required();
  entropy_cmd->add_option("--k", entropy_k, "scale constant");
  entropy_cmd->add_option("files", entropy_files, "distribution file(s)")
      ->required()
      ->expected(1, 2);
  entropy_cmd->callback([&]() { rc = run_entropy(entropy_q, entropy_k, entropy_files); });

  // table
  auto* table_cmd = app.add_subcommand("table", "CSV table of qexp or qln over a grid");
  std::string table_fn;
  double table_a = 0.0, table_min = 0.0, table_max = 1.0;
  std::size_t table_steps = 2;
  table_cmd->add_option("--fn", table_fn, "qexp|qln")
      ->required()
      ->check(CLI::IsMember({"qexp", "qln"}));
  table_cmd->add_option("--a", table_a, "deformation parameter")->required();
  table_cmd->add_option("--min", table_min, "grid start")->required();
  table_cmd->add_option("--max", table_max, "grid end")->required();
  table_cmd->add_option("--steps", table_steps, "grid points (>= 2)")->required();
  table_cmd->callback(
      [&]() { rc = run_table(table_fn, table_a, table_min, table_max, table_steps); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  return rc;
}

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (...) {
    std::fprintf(stderr, "error: unexpected failure\n");
    return kUsage;
  }
}
