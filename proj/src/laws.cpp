#include "qalg/laws.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "qalg/deformed_core.hpp"
#include "qalg/deformed_ops.hpp"

namespace qalg {

double relative_gap(double lhs, double rhs) {
  const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
  return std::fabs(lhs - rhs) / scale;
}

namespace {

// ---------------------------------------------------------------------------
// Deterministic sampling. Each sample index owns its own splitmix64 stream,
// derived from (seed, index), so reports do not depend on evaluation order
// and rejected draws simply advance the per-sample stream.

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t index)
      : state_(mix64(seed ^ mix64(index + 0x9e3779b97f4a7c15ULL))) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * ((next() >> 11) * 0x1.0p-53);
  }

 private:
  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }
  std::uint64_t state_;
};

// Rejection guards. Brackets 1+a*x and power bases are kept inside
// [kBandLo, kBandHi]; rational denominators 1+a*y away from zero. With the
// default |a| >= 1e-3 floor these bounds keep the last-ulp rounding of a
// bracket, amplified by 1/(bracket*a) through the 1/a powers, at or below
// ~5e-12, well inside the 1e-10 identity tolerance.
constexpr double kBandLo = 0.05;
constexpr double kBandHi = 20.0;
constexpr double kLinGuard = 1e-4;

bool in_band(double q) { return q >= kBandLo && q <= kBandHi; }

double draw_a(const SampleSpec& spec, SampleRng& rng) {
  for (int i = 0; i < 256; ++i) {
    const double a = rng.uniform(spec.a_range.lo, spec.a_range.hi);
    if (std::fabs(a) >= spec.a_exclusion) return a;
  }
  return spec.a_range.hi;
}

double draw_x(const SampleSpec& spec, SampleRng& rng) {
  return rng.uniform(spec.x_range.lo, spec.x_range.hi);
}

// Operand range for the positive-domain operators.
double draw_pos(SampleRng& rng) { return rng.uniform(0.05, 4.0); }

double bracket(const DeformParam& p, double x) { return 1.0 + p.a * x; }

double pow_offset(const DeformParam& p, double x) {  // x^a - 1, cancellation-free
  return std::expm1(p.a * std::log(x));
}

double mul_base(const DeformParam& p, double x, double y) {
  return 1.0 + (pow_offset(p, x) + pow_offset(p, y));
}

double div_base(const DeformParam& p, double x, double y) {
  return 1.0 + (pow_offset(p, x) - pow_offset(p, y));
}

std::optional<double> add_dual_bracket(const DeformParam& p, double x, double y) {
  const double ux = pow_offset(p, x);
  const double uy = pow_offset(p, y);
  if (!std::isfinite(ux) || !std::isfinite(uy)) return std::nullopt;
  const double delta = (ux - uy) / p.a;
  const double off = delta >= 0.0 ? ux + p.a * std::log1p(std::exp(-delta))
                                  : uy + p.a * std::log1p(std::exp(delta));
  return 1.0 + off;
}

// ---------------------------------------------------------------------------
// Law definitions

struct Drawn {
  std::vector<double> inputs;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct LawDef;
using Sampler = std::optional<Drawn> (*)(const SampleSpec&, SampleRng&);
using Runner = OpReport (*)(const LawDef&, const SampleSpec&);

struct LawDef {
  const char* name;
  bool expects_counterexample;
  double tolerance;
  Sampler sample;
  Runner run;
};

constexpr int kMaxRedraw = 400;

std::optional<Drawn> attempt(const LawDef& def, const SampleSpec& spec, std::size_t index) {
  SampleRng rng(spec.seed, index);
  for (int tries = 0; tries < kMaxRedraw; ++tries) {
    if (auto d = def.sample(spec, rng)) return d;
  }
  return std::nullopt;
}

OpReport run_identity(const LawDef& def, const SampleSpec& spec) {
  OpReport rep;
  rep.law_name = def.name;
  rep.tolerance = def.tolerance;
  for (std::size_t i = 0; i < spec.count; ++i) {
    auto d = attempt(def, spec, i);
    if (!d) continue;
    ++rep.samples_tested;
    const double abs_err = std::fabs(d->lhs - d->rhs);
    const double rel_err = relative_gap(d->lhs, d->rhs);
    rep.max_abs_error = std::max(rep.max_abs_error, abs_err);
    if (rel_err > rep.max_rel_error) {
      rep.max_rel_error = rel_err;
      rep.worst_case_inputs = d->inputs;
    }
    if (rel_err > def.tolerance && !rep.counterexample)
      rep.counterexample = Counterexample{i, d->inputs, d->lhs, d->rhs};
  }
  rep.verdict = rep.max_rel_error <= def.tolerance && rep.samples_tested > 0 ? Verdict::Holds
                                                                             : Verdict::Fails;
  if (rep.verdict == Verdict::Holds) rep.counterexample.reset();
  return rep;
}

OpReport run_nonidentity(const LawDef& def, const SampleSpec& spec) {
  OpReport rep;
  rep.law_name = def.name;
  rep.tolerance = def.tolerance;
  rep.expects_counterexample = true;
  for (std::size_t i = 0; i < spec.count; ++i) {
    auto d = attempt(def, spec, i);
    if (!d) continue;
    ++rep.samples_tested;
    const double gap = std::fabs(d->lhs - d->rhs);
    if (gap > rep.max_abs_error) {
      rep.max_abs_error = gap;
      rep.worst_case_inputs = d->inputs;
    }
    if (gap > def.tolerance && !rep.counterexample)
      rep.counterexample = Counterexample{i, d->inputs, d->lhs, d->rhs};
  }
  rep.verdict = rep.counterexample ? Verdict::Holds : Verdict::Fails;
  return rep;
}

// --- subscript addition family ---------------------------------------------

std::optional<Drawn> s_assoc_add(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_x(spec, rng), y = draw_x(spec, rng), z = draw_x(spec, rng);
  const auto xy = add_a(p, x, y);
  const auto yz = add_a(p, y, z);
  if (!xy || !yz) return std::nullopt;
  const auto lhs = add_a(p, xy.value(), z);
  const auto rhs = add_a(p, x, yz.value());
  if (!lhs || !rhs) return std::nullopt;
  return Drawn{{p.a, x, y, z}, lhs.value(), rhs.value()};
}

std::optional<Drawn> s_comm_add(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_x(spec, rng), y = draw_x(spec, rng);
  const auto lhs = add_a(p, x, y);
  const auto rhs = add_a(p, y, x);
  if (!lhs || !rhs) return std::nullopt;
  return Drawn{{p.a, x, y}, lhs.value(), rhs.value()};
}

std::optional<Drawn> s_neutral_add(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_x(spec, rng);
  const auto left = add_a(p, x, 0.0);
  const auto right = add_a(p, 0.0, x);
  if (!left || !right) return std::nullopt;
  // report whichever slot deviates more
  if (relative_gap(left.value(), x) >= relative_gap(right.value(), x))
    return Drawn{{p.a, x}, left.value(), x};
  return Drawn{{p.a, x}, right.value(), x};
}

std::optional<Drawn> s_opposite(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_x(spec, rng), y = draw_x(spec, rng);
  if (std::fabs(bracket(p, y)) < kLinGuard || std::fabs(bracket(p, x)) < kLinGuard)
    return std::nullopt;
  const auto ny = neg_a(p, y);
  const auto nx = neg_a(p, x);
  if (!ny || !nx) return std::nullopt;
  const auto diff = sub_a(p, x, y);
  const auto via_neg = add_a(p, x, ny.value());
  const auto annihilate = add_a(p, x, nx.value());
  if (!diff || !via_neg || !annihilate) return std::nullopt;
  if (relative_gap(diff.value(), via_neg.value()) >= relative_gap(annihilate.value(), 0.0))
    return Drawn{{p.a, x, y}, diff.value(), via_neg.value()};
  return Drawn{{p.a, x, y}, annihilate.value(), 0.0};
}

std::optional<Drawn> s_sign_rules(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_x(spec, rng);
  if (std::fabs(bracket(p, x)) < kLinGuard) return std::nullopt;
  const auto n = neg_a(p, x);
  if (!n) return std::nullopt;
  const auto nn = neg_a(p, n.value());
  if (!nn) return std::nullopt;
  return Drawn{{p.a, x}, nn.value(), x};
}

std::optional<Drawn> s_gen_add1(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const DeformParam one(1.0);
  const double x = draw_x(spec, rng), y = draw_x(spec, rng);
  const auto z = add_a(p, x, y);
  const auto scaled = add_a(one, p.a * x, p.a * y);
  if (!z || !scaled) return std::nullopt;
  return Drawn{{p.a, x, y}, p.a * z.value(), scaled.value()};
}

// --- subscript multiplication family ----------------------------------------

std::optional<Drawn> s_assoc_mul(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_pos(rng), y = draw_pos(rng), z = draw_pos(rng);
  if (!in_band(mul_base(p, x, y)) || !in_band(mul_base(p, y, z))) return std::nullopt;
  const auto xy = mul_a(p, x, y);
  const auto yz = mul_a(p, y, z);
  if (!xy || !yz) return std::nullopt;
  if (!in_band(mul_base(p, xy.value(), z)) || !in_band(mul_base(p, x, yz.value())))
    return std::nullopt;
  const auto lhs = mul_a(p, xy.value(), z);
  const auto rhs = mul_a(p, x, yz.value());
  if (!lhs || !rhs) return std::nullopt;
  return Drawn{{p.a, x, y, z}, lhs.value(), rhs.value()};
}

std::optional<Drawn> s_comm_mul(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_pos(rng), y = draw_pos(rng);
  if (!in_band(mul_base(p, x, y))) return std::nullopt;
  const auto lhs = mul_a(p, x, y);
  const auto rhs = mul_a(p, y, x);
  if (!lhs || !rhs) return std::nullopt;
  return Drawn{{p.a, x, y}, lhs.value(), rhs.value()};
}

std::optional<Drawn> s_neutral_mul(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_pos(rng);
  const auto left = mul_a(p, x, 1.0);
  const auto right = mul_a(p, 1.0, x);
  if (!left || !right) return std::nullopt;
  if (relative_gap(left.value(), x) >= relative_gap(right.value(), x))
    return Drawn{{p.a, x}, left.value(), x};
  return Drawn{{p.a, x}, right.value(), x};
}

std::optional<Drawn> s_inverse(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_pos(rng);
  const double base = 2.0 - (1.0 + pow_offset(p, x));
  if (!in_band(base)) return std::nullopt;
  const auto inv = inv_a(p, x);
  if (!inv || inv.value() <= 0.0) return std::nullopt;
  const auto lhs = mul_a(p, x, inv.value());
  if (!lhs) return std::nullopt;
  return Drawn{{p.a, x}, lhs.value(), 1.0};
}

std::optional<Drawn> s_gen_mul1(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const DeformParam one(1.0);
  const double x = draw_pos(rng), y = draw_pos(rng);
  if (!in_band(mul_base(p, x, y))) return std::nullopt;
  const auto z = mul_a(p, x, y);
  if (!z) return std::nullopt;
  const double lhs = std::pow(z.value(), p.a);
  const auto rhs = mul_a(one, std::pow(x, p.a), std::pow(y, p.a));
  if (!std::isfinite(lhs) || !rhs) return std::nullopt;
  return Drawn{{p.a, x, y}, lhs, rhs.value()};
}

// --- morphisms of q_exp / q_ln ----------------------------------------------

std::optional<Drawn> s_morphism_2a(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_x(spec, rng), y = draw_x(spec, rng);
  if (!in_band(bracket(p, x)) || !in_band(bracket(p, y))) return std::nullopt;
  const auto sum = add_a(p, x, y);
  if (!sum || !in_band(bracket(p, sum.value()))) return std::nullopt;
  const auto lhs = q_exp(p, sum.value());
  const auto ex = q_exp(p, x);
  const auto ey = q_exp(p, y);
  if (!lhs || !ex || !ey) return std::nullopt;
  const double rhs = ex.value() * ey.value();
  if (!std::isfinite(rhs)) return std::nullopt;
  return Drawn{{p.a, x, y}, lhs.value(), rhs};
}

std::optional<Drawn> s_morphism_3a(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_x(spec, rng), y = draw_x(spec, rng);
  if (!in_band(bracket(p, x)) || !in_band(bracket(p, y)) || !in_band(bracket(p, x + y)))
    return std::nullopt;
  const auto lhs = q_exp(p, x + y);
  const auto ex = q_exp(p, x);
  const auto ey = q_exp(p, y);
  if (!lhs || !ex || !ey) return std::nullopt;
  const auto rhs = mul_a(p, ex.value(), ey.value());
  if (!rhs) return std::nullopt;
  return Drawn{{p.a, x, y}, lhs.value(), rhs.value()};
}

std::optional<Drawn> s_morphism_4a(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_pos(rng), y = draw_pos(rng);
  if (!in_band(mul_base(p, x, y))) return std::nullopt;
  const auto prod = mul_a(p, x, y);
  if (!prod) return std::nullopt;
  const auto lhs = q_ln(p, prod.value());
  const auto lx = q_ln(p, x);
  const auto ly = q_ln(p, y);
  if (!lhs || !lx || !ly) return std::nullopt;
  return Drawn{{p.a, x, y}, lhs.value(), lx.value() + ly.value()};
}

std::optional<Drawn> s_morphism_5a(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_pos(rng), y = draw_pos(rng);
  const auto lhs = q_ln(p, x * y);
  const auto lx = q_ln(p, x);
  const auto ly = q_ln(p, y);
  if (!lhs || !lx || !ly) return std::nullopt;
  const auto rhs = add_a(p, lx.value(), ly.value());
  if (!rhs) return std::nullopt;
  return Drawn{{p.a, x, y}, lhs.value(), rhs.value()};
}

std::optional<Drawn> s_morphism_2b(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_x(spec, rng), y = draw_x(spec, rng);
  const double bx = bracket(p, x), by = bracket(p, y);
  if (!in_band(bx) || !in_band(by) || !in_band(bx / by)) return std::nullopt;
  const auto diff = sub_a(p, x, y);
  if (!diff) return std::nullopt;
  const auto lhs = q_exp(p, diff.value());
  const auto ex = q_exp(p, x);
  const auto ey = q_exp(p, y);
  if (!lhs || !ex || !ey) return std::nullopt;
  return Drawn{{p.a, x, y}, lhs.value(), ex.value() / ey.value()};
}

std::optional<Drawn> s_morphism_3b(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_x(spec, rng), y = draw_x(spec, rng);
  if (!in_band(bracket(p, x)) || !in_band(bracket(p, y)) || !in_band(bracket(p, x - y)))
    return std::nullopt;
  const auto lhs = q_exp(p, x - y);
  const auto ex = q_exp(p, x);
  const auto ey = q_exp(p, y);
  if (!lhs || !ex || !ey) return std::nullopt;
  const auto rhs = div_a(p, ex.value(), ey.value());
  if (!rhs) return std::nullopt;
  return Drawn{{p.a, x, y}, lhs.value(), rhs.value()};
}

std::optional<Drawn> s_morphism_4b(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_pos(rng), y = draw_pos(rng);
  if (!in_band(div_base(p, x, y))) return std::nullopt;
  const auto quot = div_a(p, x, y);
  if (!quot) return std::nullopt;
  const auto lhs = q_ln(p, quot.value());
  const auto lx = q_ln(p, x);
  const auto ly = q_ln(p, y);
  if (!lhs || !lx || !ly) return std::nullopt;
  return Drawn{{p.a, x, y}, lhs.value(), lx.value() - ly.value()};
}

std::optional<Drawn> s_morphism_5b(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_pos(rng), y = draw_pos(rng);
  const auto lhs = q_ln(p, x / y);
  const auto lx = q_ln(p, x);
  const auto ly = q_ln(p, y);
  if (!lhs || !lx || !ly) return std::nullopt;
  const auto rhs = sub_a(p, lx.value(), ly.value());
  if (!rhs) return std::nullopt;
  return Drawn{{p.a, x, y}, lhs.value(), rhs.value()};
}

// --- dual operators ----------------------------------------------------------

std::optional<Drawn> s_dual_def_9(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_x(spec, rng), y = draw_x(spec, rng);
  if (!in_band(bracket(p, x)) || !in_band(bracket(p, y))) return std::nullopt;
  const auto m = mul_dual(p, x, y);
  if (!m || !in_band(bracket(p, m.value()))) return std::nullopt;
  const auto em = q_exp(p, m.value());
  const auto ex = q_exp(p, x);
  const auto ey = q_exp(p, y);
  if (!em || !ex || !ey) return std::nullopt;
  const double lhs = std::log(em.value());
  const double rhs = std::log(ex.value()) * std::log(ey.value());
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return std::nullopt;
  return Drawn{{p.a, x, y}, lhs, rhs};
}

std::optional<Drawn> s_dual_def_10(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_pos(rng), y = draw_pos(rng);
  const auto br = add_dual_bracket(p, x, y);
  if (!br || !in_band(*br)) return std::nullopt;
  const auto sum = add_dual(p, x, y);
  if (!sum) return std::nullopt;
  const auto lhs = q_ln(p, sum.value());
  const auto lx = q_ln(p, x);
  const auto ly = q_ln(p, y);
  if (!lhs || !lx || !ly) return std::nullopt;
  // ln(e^lx + e^ly) in shifted form
  const double hi = std::max(lx.value(), ly.value());
  const double rhs = hi + std::log1p(std::exp(-std::fabs(lx.value() - ly.value())));
  return Drawn{{p.a, x, y}, lhs.value(), rhs};
}

std::optional<Drawn> s_distrib_11(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_x(spec, rng), y = draw_x(spec, rng), z = draw_x(spec, rng);
  if (!in_band(bracket(p, x)) || !in_band(bracket(p, y)) || !in_band(bracket(p, z)))
    return std::nullopt;
  const auto yz = add_a(p, y, z);
  if (!yz || !in_band(bracket(p, yz.value()))) return std::nullopt;
  const auto xy = mul_dual(p, x, y);
  const auto xz = mul_dual(p, x, z);
  if (!xy || !xz) return std::nullopt;
  const auto lhs = add_a(p, xy.value(), xz.value());
  const auto rhs = mul_dual(p, x, yz.value());
  if (!lhs || !rhs) return std::nullopt;
  return Drawn{{p.a, x, y, z}, lhs.value(), rhs.value()};
}

std::optional<Drawn> s_distrib_12(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_pos(rng), y = draw_pos(rng), z = draw_pos(rng);
  if (!in_band(mul_base(p, x, y)) || !in_band(mul_base(p, x, z))) return std::nullopt;
  const auto xy = mul_a(p, x, y);
  const auto xz = mul_a(p, x, z);
  if (!xy || !xz) return std::nullopt;
  const auto lhs_br = add_dual_bracket(p, xy.value(), xz.value());
  if (!lhs_br || !in_band(*lhs_br)) return std::nullopt;
  const auto yz_br = add_dual_bracket(p, y, z);
  if (!yz_br || !in_band(*yz_br)) return std::nullopt;
  const auto yz = add_dual(p, y, z);
  if (!yz) return std::nullopt;
  if (!in_band(mul_base(p, x, yz.value()))) return std::nullopt;
  const auto lhs = add_dual(p, xy.value(), xz.value());
  const auto rhs = mul_a(p, x, yz.value());
  if (!lhs || !rhs) return std::nullopt;
  return Drawn{{p.a, x, y, z}, lhs.value(), rhs.value()};
}

// --- non-identities: the engine must find a counterexample -------------------

std::optional<Drawn> s_nondistrib_6(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_pos(rng), y = draw_pos(rng), z = draw_pos(rng);
  if (!in_band(mul_base(p, x, y)) || !in_band(mul_base(p, x, z)) ||
      !in_band(mul_base(p, x, y + z)))
    return std::nullopt;
  const auto xy = mul_a(p, x, y);
  const auto xz = mul_a(p, x, z);
  const auto whole = mul_a(p, x, y + z);
  if (!xy || !xz || !whole) return std::nullopt;
  const double lhs = xy.value() + xz.value();
  if (!std::isfinite(lhs)) return std::nullopt;
  return Drawn{{p.a, x, y, z}, lhs, whole.value()};
}

std::optional<Drawn> s_nondistrib_7(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_x(spec, rng), y = draw_x(spec, rng), z = draw_x(spec, rng);
  const auto lhs = add_a(p, x * y, x * z);
  const auto yz = add_a(p, y, z);
  if (!lhs || !yz) return std::nullopt;
  const double rhs = x * yz.value();
  if (!std::isfinite(rhs)) return std::nullopt;
  return Drawn{{p.a, x, y, z}, lhs.value(), rhs};
}

std::optional<Drawn> s_nondistrib_8(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_pos(rng), y = draw_pos(rng), z = draw_pos(rng);
  if (!in_band(mul_base(p, x, y)) || !in_band(mul_base(p, x, z))) return std::nullopt;
  const auto xy = mul_a(p, x, y);
  const auto xz = mul_a(p, x, z);
  const auto yz = add_a(p, y, z);
  if (!xy || !xz || !yz || yz.value() <= 0.0) return std::nullopt;
  if (!in_band(mul_base(p, x, yz.value()))) return std::nullopt;
  const auto lhs = add_a(p, xy.value(), xz.value());
  const auto rhs = mul_a(p, x, yz.value());
  if (!lhs || !rhs) return std::nullopt;
  return Drawn{{p.a, x, y, z}, lhs.value(), rhs.value()};
}

std::optional<Drawn> s_nondistrib_13(const SampleSpec& spec, SampleRng& rng) {
  const DeformParam p(draw_a(spec, rng));
  const double x = draw_pos(rng), y = draw_pos(rng), z = draw_pos(rng);
  if (!in_band(bracket(p, x)) || !in_band(bracket(p, y)) || !in_band(bracket(p, z)))
    return std::nullopt;
  const auto xy = mul_dual(p, x, y);
  const auto xz = mul_dual(p, x, z);
  if (!xy || !xz || xy.value() <= 0.0 || xz.value() <= 0.0) return std::nullopt;
  const auto yz = add_dual(p, y, z);
  if (!yz || !in_band(bracket(p, yz.value()))) return std::nullopt;
  const auto lhs = add_dual(p, xy.value(), xz.value());
  const auto rhs = mul_dual(p, x, yz.value());
  if (!lhs || !rhs) return std::nullopt;
  return Drawn{{p.a, x, y, z}, lhs.value(), rhs.value()};
}

// --- custom runners -----------------------------------------------------------

// No absorbing element: every sampled candidate y must be refuted by some x
// with mul_a(x, y) clearly away from y.
OpReport run_no_absorbing(const LawDef& def, const SampleSpec& spec) {
  OpReport rep;
  rep.law_name = def.name;
  rep.tolerance = def.tolerance;
  rep.expects_counterexample = true;
  bool all_refuted = true;
  for (std::size_t i = 0; i < spec.count; ++i) {
    SampleRng rng(spec.seed, i);
    const DeformParam p(draw_a(spec, rng));
    const double y = draw_pos(rng);
    ++rep.samples_tested;
    bool refuted = false;
    for (int probe = 0; probe < 100 && !refuted; ++probe) {
      const double x = draw_pos(rng);
      const auto prod = mul_a(p, x, y);
      if (!prod) continue;
      const double gap = std::fabs(prod.value() - y);
      if (gap > def.tolerance) {
        refuted = true;
        if (gap > rep.max_abs_error) {
          rep.max_abs_error = gap;
          rep.worst_case_inputs = {p.a, x, y};
        }
        if (!rep.counterexample)
          rep.counterexample = Counterexample{i, {p.a, x, y}, prod.value(), y};
      }
    }
    if (!refuted) {
      all_refuted = false;
      rep.worst_case_inputs = {p.a, y};
      break;
    }
  }
  rep.verdict = (all_refuted && rep.counterexample) ? Verdict::Holds : Verdict::Fails;
  return rep;
}

// Dual-operator anomalies: mul_dual(x, 0) == 0 identically (within
// tolerance), while mul_dual(x, 1) and add_dual(x, y->0+) visibly miss x.
OpReport run_dual_anomalies(const LawDef& def, const SampleSpec& spec) {
  OpReport rep;
  rep.law_name = def.name;
  rep.tolerance = def.tolerance;
  rep.expects_counterexample = true;
  bool zero_identity_ok = true;
  bool unit_gap_found = false;
  bool near_zero_gap_found = false;
  constexpr double kGap = 1e-6;
  for (std::size_t i = 0; i < spec.count; ++i) {
    SampleRng rng(spec.seed, i);
    const DeformParam p(draw_a(spec, rng));
    double x = 0.0;
    bool ok = false;
    for (int tries = 0; tries < kMaxRedraw && !ok; ++tries) {
      x = draw_pos(rng);
      ok = in_band(bracket(p, x));
    }
    if (!ok) continue;
    ++rep.samples_tested;

    const auto at_zero = mul_dual(p, x, 0.0);
    if (!at_zero) continue;
    const double dev = relative_gap(at_zero.value(), 0.0);
    rep.max_abs_error = std::max(rep.max_abs_error, std::fabs(at_zero.value()));
    if (dev > rep.max_rel_error) {
      rep.max_rel_error = dev;
      rep.worst_case_inputs = {p.a, x};
    }
    if (dev > def.tolerance) zero_identity_ok = false;

    if (const auto at_one = mul_dual(p, x, 1.0)) {
      if (std::fabs(at_one.value() - x) > kGap) {
        unit_gap_found = true;
        if (!rep.counterexample)
          rep.counterexample = Counterexample{i, {p.a, x, 1.0}, at_one.value(), x};
      }
    }
    const double y_small = rng.uniform(1e-5, 1e-3);
    if (const auto near_zero = add_dual(p, x, y_small)) {
      if (std::fabs(near_zero.value() - x) > kGap) near_zero_gap_found = true;
    }
  }
  rep.verdict = (zero_identity_ok && unit_gap_found && near_zero_gap_found && rep.samples_tested > 0)
                    ? Verdict::Holds
                    : Verdict::Fails;
  return rep;
}

// ---------------------------------------------------------------------------
// Registry

constexpr double kTolDefault = 1e-10;
constexpr double kTolNeutral = 1e-14;
constexpr double kTolDistrib = 1e-9;
constexpr double kGapRequired = 1e-6;

const LawDef kLaws[] = {
    {"assoc_add", false, kTolDefault, s_assoc_add, run_identity},
    {"assoc_mul", false, kTolDefault, s_assoc_mul, run_identity},
    {"comm_add", false, kTolDefault, s_comm_add, run_identity},
    {"comm_mul", false, kTolDefault, s_comm_mul, run_identity},
    {"neutral_add", false, kTolNeutral, s_neutral_add, run_identity},
    {"neutral_mul", false, kTolNeutral, s_neutral_mul, run_identity},
    {"opposite", false, kTolDefault, s_opposite, run_identity},
    {"inverse", false, kTolDefault, s_inverse, run_identity},
    {"sign_rules", false, kTolDefault, s_sign_rules, run_identity},
    {"gen_add1", false, kTolDefault, s_gen_add1, run_identity},
    {"gen_mul1", false, kTolDefault, s_gen_mul1, run_identity},
    {"morphism_2a", false, kTolDefault, s_morphism_2a, run_identity},
    {"morphism_3a", false, kTolDefault, s_morphism_3a, run_identity},
    {"morphism_4a", false, kTolDefault, s_morphism_4a, run_identity},
    {"morphism_5a", false, kTolDefault, s_morphism_5a, run_identity},
    {"morphism_2b", false, kTolDefault, s_morphism_2b, run_identity},
    {"morphism_3b", false, kTolDefault, s_morphism_3b, run_identity},
    {"morphism_4b", false, kTolDefault, s_morphism_4b, run_identity},
    {"morphism_5b", false, kTolDefault, s_morphism_5b, run_identity},
    {"dual_def_9", false, kTolDefault, s_dual_def_9, run_identity},
    {"dual_def_10", false, kTolDefault, s_dual_def_10, run_identity},
    {"distrib_11", false, kTolDistrib, s_distrib_11, run_identity},
    {"distrib_12", false, kTolDistrib, s_distrib_12, run_identity},
    {"nondistrib_6", true, kGapRequired, s_nondistrib_6, run_nonidentity},
    {"nondistrib_7", true, kGapRequired, s_nondistrib_7, run_nonidentity},
    {"nondistrib_8", true, kGapRequired, s_nondistrib_8, run_nonidentity},
    {"nondistrib_13", true, kGapRequired, s_nondistrib_13, run_nonidentity},
    {"no_absorbing", true, kGapRequired, nullptr, run_no_absorbing},
    {"dual_anomalies", true, 1e-14, nullptr, run_dual_anomalies},
};

const LawDef* find_law(std::string_view name) {
  for (const auto& law : kLaws)
    if (name == law.name) return &law;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& law : kLaws) v.emplace_back(law.name);
    return v;
  }();
  return names;
}

bool is_known_law(std::string_view name) { return find_law(name) != nullptr; }

OpReport check_law(std::string_view law, const SampleSpec& spec) {
  const LawDef* def = find_law(law);
  if (!def) throw UnknownLawError("unknown law: " + std::string(law));
  return def->run(*def, spec);
}

}  // namespace qalg
