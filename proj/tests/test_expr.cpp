#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "qalg/expr.hpp"

using namespace qalg;
using namespace qalg::expr;

namespace {

void check_span_invariants(const std::string& input) {
  const auto tokens = tokenize(input);
  std::size_t covered = 0;
  std::size_t last_end = 0;
  for (const auto& t : tokens) {
    CHECK(t.span.begin >= last_end);  // non-overlapping, increasing
    CHECK(t.span.end > t.span.begin);
    for (std::size_t i = last_end; i < t.span.begin; ++i)
      CHECK(std::isspace(static_cast<unsigned char>(input[i])));  // gaps are whitespace only
    covered += t.span.end - t.span.begin;
    last_end = t.span.end;
  }
  for (std::size_t i = last_end; i < input.size(); ++i)
    CHECK(std::isspace(static_cast<unsigned char>(input[i])));
  std::size_t non_ws = 0;
  for (char c : input)
    if (!std::isspace(static_cast<unsigned char>(c))) ++non_ws;
  CHECK(covered == non_ws);
}

}  // namespace

TEST_CASE("tokenizer") {
  const auto tokens = tokenize("0.1 @+ 0.1");
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0].kind == TokenKind::Number);
  CHECK(tokens[0].number == 0.1);
  CHECK(tokens[1].kind == TokenKind::DeformedOp);
  CHECK(tokens[1].text == "@+");
  CHECK(tokens[2].kind == TokenKind::Number);

  const auto call = tokenize("qln(x) + 2");
  REQUIRE(call.size() == 6);
  CHECK(call[0].kind == TokenKind::FuncName);
  CHECK(call[0].text == "qln");
  CHECK(call[1].kind == TokenKind::LParen);
  CHECK(call[2].kind == TokenKind::Ident);
  CHECK(call[2].text == "x");
  CHECK(call[3].kind == TokenKind::RParen);
  CHECK(call[4].kind == TokenKind::ClassicalOp);
  CHECK(call[5].kind == TokenKind::Number);

  CHECK(tokenize("1e-3 ^* 2E+4")[0].number == 1e-3);
  CHECK(tokenize("7 ^+ 2")[1].kind == TokenKind::DualOp);

  try {
    tokenize("3 @@ 4");
    FAIL("expected LexError");
  } catch (const LexError& e) {
    CHECK(e.offset() == 2);
  }
  CHECK_THROWS_AS(tokenize("3 $ 4"), LexError);
  CHECK_THROWS_AS(tokenize("1e999"), LexError);   // out of range
  CHECK_THROWS_AS(tokenize("1. + 2"), LexError);  // digit required after '.'
}

TEST_CASE("token spans cover the non-whitespace input") {
  check_span_invariants("0.1 @+ 0.1");
  check_span_invariants("qln( x )+2 ^* y_2");
  check_span_invariants("  -3e4*(a@/b)  ");
}

TEST_CASE("parser precedence and associativity") {
  // multiplicative tier binds tighter
  const auto e = parse_text("1 @+ 2 @* 3");
  const auto& add = std::get<Binary>(e->node);
  CHECK(add.op == BinaryOp::DeformedAdd);
  CHECK(std::get<NumberLit>(add.lhs->node).value == 1.0);
  const auto& mul = std::get<Binary>(add.rhs->node);
  CHECK(mul.op == BinaryOp::DeformedMul);

  const auto grouped = parse_text("(1 @+ 2) @* 3");
  const auto& gmul = std::get<Binary>(grouped->node);
  CHECK(gmul.op == BinaryOp::DeformedMul);
  CHECK(std::get<Binary>(gmul.lhs->node).op == BinaryOp::DeformedAdd);

  // left associativity
  const auto chain = parse_text("1 - 2 - 3");
  const auto& outer = std::get<Binary>(chain->node);
  CHECK(outer.op == BinaryOp::Sub);
  CHECK(std::get<Binary>(outer.lhs->node).op == BinaryOp::Sub);
  CHECK(std::get<NumberLit>(outer.rhs->node).value == 3.0);

  // unary minus binds tighter than any binary operator
  const auto neg = parse_text("-2 * 3");
  const auto& prod = std::get<Binary>(neg->node);
  CHECK(prod.op == BinaryOp::Mul);
  CHECK(std::get<Unary>(prod.lhs->node).op == UnaryOp::Neg);
  CHECK(std::get<Unary>(parse_text("@-x")->node).op == UnaryOp::DeformedNeg);
}

TEST_CASE("parse errors") {
  try {
    parse_text("1 @+ ");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);  // just past the dangling operator
    CHECK(e.expected() == "an operand");
  }
  CHECK_THROWS_AS(parse_text(""), ParseError);
  CHECK_THROWS_AS(parse_text("(1 + 2"), ParseError);
  CHECK_THROWS_AS(parse_text("1 2"), ParseError);
  CHECK_THROWS_AS(parse_text("qexp()"), ParseError);
  CHECK_THROWS_AS(parse_text("qexp(1, 2)"), ParseError);  // unary functions
  CHECK_THROWS_AS(parse_text("qexp 3"), ParseError);
}

TEST_CASE("recursion depth limit") {
  std::string deep = "1";
  for (int i = 0; i < 400; ++i) deep = "qexp(" + deep + ")";
  CHECK_THROWS_AS(parse_text(deep), ParseError);
  ParseOptions relaxed;
  relaxed.max_depth = 4096;
  CHECK_NOTHROW(parse_text(deep, relaxed));
  std::string shallow = "1";
  for (int i = 0; i < 50; ++i) shallow = "qexp(" + shallow + ")";
  CHECK_NOTHROW(parse_text(shallow));
}

TEST_CASE("evaluation") {
  EvalEnv env;
  env.deformation = DeformParam(1.0);
  CHECK(evaluate(*parse_text("0.1 @+ 0.1"), env).value() ==
        doctest::Approx(0.21).epsilon(1e-15));
  CHECK(evaluate(*parse_text("3 @* 4"), env).value() == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(evaluate(*parse_text("1 ^+ 1"), env).value() ==
        doctest::Approx(1.0 + std::log(2.0)).epsilon(1e-14));
  CHECK(evaluate(*parse_text("2 ^* 0"), env).value() == 0.0);
  CHECK(evaluate(*parse_text("2 + 3 * 4"), env).value() == 14.0);
  CHECK(evaluate(*parse_text("exp(ln(2))"), env).value() == doctest::Approx(2.0).epsilon(1e-15));

  env.deformation = DeformParam(0.7);
  env.bindings["x"] = 2.0;
  CHECK(evaluate(*parse_text("qln(qexp(x))"), env).value() ==
        doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("evaluation failures carry the failing span") {
  EvalEnv env;
  env.deformation = DeformParam(1.0);

  const std::string singular = "3 @- (-1)";
  const auto r1 = evaluate(*parse_text(singular), env);
  REQUIRE_FALSE(r1.has_value());
  CHECK(r1.error().kind == EvalError::Kind::Domain);
  CHECK(r1.error().violation == DomainViolation::SingularDenominator);
  CHECK(r1.error().span.begin == 0);
  CHECK(r1.error().span.end == singular.size());

  const std::string inner = "1 + qln(0 - 1)";
  const auto r2 = evaluate(*parse_text(inner), env);
  REQUIRE_FALSE(r2.has_value());
  CHECK(r2.error().violation == DomainViolation::NonPositiveArgument);
  CHECK(inner.substr(r2.error().span.begin, r2.error().span.end - r2.error().span.begin) ==
        "qln(0 - 1)");

  const auto r3 = evaluate(*parse_text("2 * y"), env);
  REQUIRE_FALSE(r3.has_value());
  CHECK(r3.error().kind == EvalError::Kind::UnboundVariable);
  CHECK(r3.error().name == "y");
  CHECK(r3.error().span.begin == 4);

  const auto r4 = evaluate(*parse_text("1 / (2 - 2)"), env);
  REQUIRE_FALSE(r4.has_value());
  CHECK(r4.error().violation == DomainViolation::SingularDenominator);
}

TEST_CASE("pretty printing explicit trees") {
  CHECK(pretty_print(*parse_text("1 @+ 2 @* 3")) == "1 @+ 2 @* 3");
  CHECK(pretty_print(*parse_text("(1 @+ 2) @* 3")) == "(1 @+ 2) @* 3");
  CHECK(pretty_print(*parse_text("0.5")) == "0.5");
  CHECK(pretty_print(*parse_text("1 - (2 - 3)")) == "1 - (2 - 3)");
  CHECK(pretty_print(*parse_text("1 - 2 - 3")) == "1 - 2 - 3");
  CHECK(pretty_print(*parse_text("-(1 + 2)")) == "-(1 + 2)");
  CHECK(pretty_print(*parse_text("qexp(x @+ 1)")) == "qexp(x @+ 1)");
}

namespace {

// Random trees over the full grammar; literals stay non-negative because the
// printer renders negation as a unary node.
ExprPtr random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 1 ? 1 : 4);
  std::uniform_real_distribution<double> num(0.0, 10.0);
  std::uniform_int_distribution<int> var_pick(0, 2);
  std::uniform_int_distribution<int> op_pick(0, 9);
  std::uniform_int_distribution<int> un_pick(0, 1);
  std::uniform_int_distribution<int> fn_pick(0, 3);
  auto e = std::make_unique<Expr>();
  switch (pick(rng)) {
    case 0:
      e->node = NumberLit{num(rng)};
      break;
    case 1: {
      const char* names[] = {"x", "y", "z"};
      e->node = Var{names[var_pick(rng)]};
      break;
    }
    case 2:
      e->node = Unary{static_cast<UnaryOp>(un_pick(rng)), random_tree(rng, depth - 1)};
      break;
    case 3:
      e->node = Binary{static_cast<BinaryOp>(op_pick(rng)), random_tree(rng, depth - 1),
                       random_tree(rng, depth - 1)};
      break;
    default:
      e->node = Call{static_cast<FuncKind>(fn_pick(rng)), random_tree(rng, depth - 1)};
      break;
  }
  return e;
}

}  // namespace

TEST_CASE("round trip: parse after pretty_print is the identity") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> depth_draw(1, 12);
  for (int i = 0; i < 1000; ++i) {
    const ExprPtr tree = random_tree(rng, depth_draw(rng));
    const std::string text = pretty_print(*tree);
    ParseOptions opts;
    opts.max_depth = 4096;
    const ExprPtr back = parse_text(text, opts);
    INFO("text: ", text);
    REQUIRE(structurally_equal(*tree, *back));
    if (i % 10 == 0) check_span_invariants(text);
  }
}

namespace {

ExprPtr random_deformed_tree(std::mt19937_64& rng, int depth) {
  auto e = std::make_unique<Expr>();
  std::uniform_int_distribution<int> pick(0, depth <= 1 ? 1 : 2);
  std::uniform_real_distribution<double> num(0.5, 3.0);
  std::uniform_int_distribution<int> var_pick(0, 2);
  std::uniform_int_distribution<int> op_pick(0, 5);
  switch (pick(rng)) {
    case 0:
      e->node = NumberLit{num(rng)};
      break;
    case 1: {
      const char* names[] = {"x", "y", "z"};
      e->node = Var{names[var_pick(rng)]};
      break;
    }
    default: {
      const BinaryOp deformed[] = {BinaryOp::DeformedAdd, BinaryOp::DeformedSub,
                                   BinaryOp::DeformedMul, BinaryOp::DeformedDiv,
                                   BinaryOp::DualAdd,     BinaryOp::DualMul};
      e->node = Binary{deformed[op_pick(rng)], random_deformed_tree(rng, depth - 1),
                       random_deformed_tree(rng, depth - 1)};
      break;
    }
  }
  return e;
}

ExprPtr classical_twin(const Expr& e) {
  auto out = std::make_unique<Expr>();
  if (const auto* n = std::get_if<NumberLit>(&e.node)) {
    out->node = *n;
  } else if (const auto* v = std::get_if<Var>(&e.node)) {
    out->node = *v;
  } else {
    const auto& b = std::get<Binary>(e.node);
    BinaryOp op;
    switch (b.op) {
      case BinaryOp::DeformedAdd:
      case BinaryOp::DualAdd:
        op = BinaryOp::Add;
        break;
      case BinaryOp::DeformedSub:
        op = BinaryOp::Sub;
        break;
      case BinaryOp::DeformedDiv:
        op = BinaryOp::Div;
        break;
      default:
        op = BinaryOp::Mul;
        break;
    }
    out->node = Binary{op, classical_twin(*b.lhs), classical_twin(*b.rhs)};
  }
  return out;
}

}  // namespace

TEST_CASE("garbage input yields typed errors, never crashes") {
  std::mt19937_64 rng(424242);
  const std::string alphabet = "0123456789.eE+-*/@^()_abqlnxp, \t";
  std::uniform_int_distribution<std::size_t> len_draw(0, 24);
  std::uniform_int_distribution<std::size_t> ch_draw(0, alphabet.size() - 1);
  EvalEnv env;
  env.deformation = DeformParam(0.8);
  env.bindings = {{"x", 1.5}, {"y", 0.25}};
  int parsed = 0;
  for (int i = 0; i < 30000; ++i) {
    std::string text;
    const std::size_t len = len_draw(rng);
    for (std::size_t j = 0; j < len; ++j) text += alphabet[ch_draw(rng)];
    try {
      const ExprPtr tree = parse_text(text);
      ++parsed;
      (void)evaluate(*tree, env);  // may fail, must not throw
    } catch (const LexError&) {
    } catch (const ParseError&) {
    }
  }
  CHECK(parsed > 100);  // the alphabet is expression-shaped enough to parse sometimes
}

TEST_CASE("deformed operators at a = 0 are the classical ones") {
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<int> depth_draw(1, 6);
  std::uniform_real_distribution<double> bind(0.5, 2.5);
  EvalEnv env;
  env.deformation = DeformParam(0.0);
  int compared = 0;
  for (int i = 0; i < 3000 && compared < 1000; ++i) {
    const ExprPtr tree = random_deformed_tree(rng, depth_draw(rng));
    env.bindings = {{"x", bind(rng)}, {"y", bind(rng)}, {"z", bind(rng)}};
    const auto deformed = evaluate(*tree, env);
    if (!deformed) continue;  // outside a classical domain (e.g. zero divisor)
    const auto classical = evaluate(*classical_twin(*tree), env);
    REQUIRE(classical.has_value());
    CHECK(std::fabs(deformed.value() - classical.value()) <=
          1e-12 * std::max(1.0, std::fabs(classical.value())));
    ++compared;
  }
  CHECK(compared == 1000);
}
