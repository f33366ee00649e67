#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qalg/deformed_core.hpp"

namespace qalg::expr {

/// Half-open character range [begin, end) in the source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

enum class TokenKind {
  Number,       // decimal literal with optional fraction and exponent
  Ident,        // variable name
  FuncName,     // qexp, qln, exp, ln
  ClassicalOp,  // + - * /
  DeformedOp,   // @+ @- @* @/
  DualOp,       // ^+ ^*
  LParen,
  RParen,
  Comma,
};

struct Token {
  TokenKind kind = TokenKind::Number;
  Span span;
  std::string text;
  double number = 0.0;  // meaningful for Number tokens
};

class LexError : public std::runtime_error {
 public:
  LexError(std::size_t offset, const std::string& message)
      : std::runtime_error(message), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& expected)
      : std::runtime_error("expected " + expected), offset_(offset), expected_(expected) {}
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

/// Splits the input into tokens. Spans are non-overlapping, strictly
/// increasing and cover all non-whitespace input. Throws LexError with the
/// offending offset.
std::vector<Token> tokenize(std::string_view input);

enum class BinaryOp {
  Add, Sub, Mul, Div,                                  // classical
  DeformedAdd, DeformedSub, DeformedMul, DeformedDiv,  // @+ @- @* @/
  DualAdd, DualMul,                                    // ^+ ^*
};

enum class UnaryOp { Neg, DeformedNeg };

enum class FuncKind { QExp, QLn, Exp, Ln };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct NumberLit {
  double value = 0.0;
};
struct Var {
  std::string name;
};
struct Unary {
  UnaryOp op;
  ExprPtr operand;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Call {
  FuncKind func;
  ExprPtr arg;
};

struct Expr {
  std::variant<NumberLit, Var, Unary, Binary, Call> node;
  Span span;
};

struct ParseOptions {
  std::size_t max_depth = 256;
};

/// Recursive-descent parse of the two-tier grammar: multiplicative
/// {* / @* @/ ^*} binds above additive {+ - @+ @- ^+}; every binary operator
/// is left-associative and unary minus binds tighter than any binary
/// operator. Throws ParseError.
ExprPtr parse(const std::vector<Token>& tokens, const ParseOptions& opts = {});

/// tokenize() + parse() in one step.
ExprPtr parse_text(std::string_view input, const ParseOptions& opts = {});

/// One deformation parameter per evaluation: every deformed and dual
/// operator in the tree shares it.
struct EvalEnv {
  DeformParam deformation;
  EvalPolicy policy = EvalPolicy::Strict;
  std::map<std::string, double> bindings;
};

struct EvalError {
  enum class Kind { Domain, UnboundVariable };
  Kind kind = Kind::Domain;
  DomainViolation violation = DomainViolation::Overflow;  // when kind == Domain
  std::string name;                                       // when kind == UnboundVariable
  Span span;                                              // the subexpression that failed

  std::string message() const;
};

class EvalResult {
 public:
  static EvalResult ok(double v) {
    EvalResult r;
    r.has_value_ = true;
    r.value_ = v;
    return r;
  }
  static EvalResult fail(EvalError e) {
    EvalResult r;
    r.error_ = std::move(e);
    return r;
  }

  bool has_value() const { return has_value_; }
  explicit operator bool() const { return has_value_; }
  double value() const {
    if (!has_value_) throw std::logic_error("EvalResult: no value");
    return value_;
  }
  const EvalError& error() const {
    if (has_value_) throw std::logic_error("EvalResult: no error");
    return error_;
  }

 private:
  EvalResult() = default;
  bool has_value_ = false;
  double value_ = 0.0;
  EvalError error_;
};

/// Recursive evaluation. Domain violations carry the span of the exact
/// subexpression that failed; unbound variables likewise.
EvalResult evaluate(const Expr& e, const EvalEnv& env);

/// Canonical text that re-parses to a structurally identical tree, with
/// minimal parentheses under the precedence table.
std::string pretty_print(const Expr& e);

/// Structural identity, ignoring spans.
bool structurally_equal(const Expr& a, const Expr& b);

/// Depth of the tree (a lone leaf has depth 1). Computed iteratively, so it
/// is safe on trees deeper than the evaluation recursion could handle.
std::size_t tree_depth(const Expr& e);

const char* symbol(BinaryOp op);
const char* symbol(UnaryOp op);
const char* func_name(FuncKind f);

}  // namespace qalg::expr
