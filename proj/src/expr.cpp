#include "qalg/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <utility>

#include "qalg/deformed_ops.hpp"

namespace qalg::expr {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Token> tokenize(std::string_view input) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = input.size();

  auto push = [&](TokenKind kind, std::size_t begin, std::size_t end, double number = 0.0) {
    tokens.push_back(Token{kind, Span{begin, end},
                           std::string(input.substr(begin, end - begin)), number});
  };

  while (i < n) {
    const char c = input[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '(') { push(TokenKind::LParen, i, i + 1); ++i; continue; }
    if (c == ')') { push(TokenKind::RParen, i, i + 1); ++i; continue; }
    if (c == ',') { push(TokenKind::Comma, i, i + 1); ++i; continue; }
    if (c == '+' || c == '-' || c == '*' || c == '/') {
      push(TokenKind::ClassicalOp, i, i + 1);
      ++i;
      continue;
    }
    if (c == '@') {
      if (i + 1 < n && std::strchr("+-*/", input[i + 1])) {
        push(TokenKind::DeformedOp, i, i + 2);
        i += 2;
        continue;
      }
      throw LexError(i, "unknown operator '@'");
    }
    if (c == '^') {
      if (i + 1 < n && (input[i + 1] == '+' || input[i + 1] == '*')) {
        push(TokenKind::DualOp, i, i + 2);
        i += 2;
        continue;
      }
      throw LexError(i, "unknown operator '^'");
    }
    if (is_digit(c)) {
      const std::size_t begin = i;
      while (i < n && is_digit(input[i])) ++i;
      if (i < n && input[i] == '.') {
        ++i;
        if (i >= n || !is_digit(input[i])) throw LexError(i, "digit expected after '.'");
        while (i < n && is_digit(input[i])) ++i;
      }
      if (i < n && (input[i] == 'e' || input[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (input[j] == '+' || input[j] == '-')) ++j;
        if (j < n && is_digit(input[j])) {
          i = j;
          while (i < n && is_digit(input[i])) ++i;
        }
        // otherwise the 'e' starts the next (identifier) token
      }
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(input.data() + begin, input.data() + i, value);
      if (ec == std::errc::result_out_of_range || !std::isfinite(value))
        throw LexError(begin, "number out of range");
      if (ec != std::errc() || ptr != input.data() + i)
        throw LexError(begin, "malformed number");
      push(TokenKind::Number, begin, i, value);
      continue;
    }
    if (is_ident_start(c)) {
      const std::size_t begin = i;
      while (i < n && is_ident_char(input[i])) ++i;
      const std::string_view word = input.substr(begin, i - begin);
      const bool is_func = word == "qexp" || word == "qln" || word == "exp" || word == "ln";
      push(is_func ? TokenKind::FuncName : TokenKind::Ident, begin, i);
      continue;
    }
    throw LexError(i, std::string("unexpected character '") + c + "'");
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, const ParseOptions& opts)
      : tokens_(tokens), opts_(opts) {}

  ExprPtr run() {
    if (tokens_.empty()) throw ParseError(0, "an expression");
    ExprPtr e = parse_additive();
    if (pos_ < tokens_.size())
      throw ParseError(tokens_[pos_].span.begin, "end of input");
    if (tree_depth(*e) > opts_.max_depth)
      throw ParseError(0, "a shallower expression (depth limit exceeded)");
    return e;
  }

 private:
  const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }

  std::size_t error_offset() const {
    if (pos_ < tokens_.size()) return tokens_[pos_].span.begin;
    return tokens_.empty() ? 0 : tokens_.back().span.end;
  }

  // Guards the recursive entry points (parenthesized groups and call
  // arguments); the final tree-depth check happens after the parse.
  struct NestingGuard {
    Parser& parser;
    explicit NestingGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > parser.opts_.max_depth)
        throw ParseError(parser.error_offset(), "a shallower expression (depth limit exceeded)");
    }
    ~NestingGuard() { --parser.depth_; }
  };

  static ExprPtr node(std::variant<NumberLit, Var, Unary, Binary, Call> v, Span span) {
    auto e = std::make_unique<Expr>();
    e->node = std::move(v);
    e->span = span;
    return e;
  }

  ExprPtr parse_additive() {
    ExprPtr lhs = parse_multiplicative();
    while (const Token* t = peek()) {
      BinaryOp op;
      if (t->kind == TokenKind::ClassicalOp && t->text == "+") op = BinaryOp::Add;
      else if (t->kind == TokenKind::ClassicalOp && t->text == "-") op = BinaryOp::Sub;
      else if (t->kind == TokenKind::DeformedOp && t->text == "@+") op = BinaryOp::DeformedAdd;
      else if (t->kind == TokenKind::DeformedOp && t->text == "@-") op = BinaryOp::DeformedSub;
      else if (t->kind == TokenKind::DualOp && t->text == "^+") op = BinaryOp::DualAdd;
      else break;
      ++pos_;
      ExprPtr rhs = parse_multiplicative();
      const Span span{lhs->span.begin, rhs->span.end};
      lhs = node(Binary{op, std::move(lhs), std::move(rhs)}, span);
    }
    return lhs;
  }

  ExprPtr parse_multiplicative() {
    ExprPtr lhs = parse_unary();
    while (const Token* t = peek()) {
      BinaryOp op;
      if (t->kind == TokenKind::ClassicalOp && t->text == "*") op = BinaryOp::Mul;
      else if (t->kind == TokenKind::ClassicalOp && t->text == "/") op = BinaryOp::Div;
      else if (t->kind == TokenKind::DeformedOp && t->text == "@*") op = BinaryOp::DeformedMul;
      else if (t->kind == TokenKind::DeformedOp && t->text == "@/") op = BinaryOp::DeformedDiv;
      else if (t->kind == TokenKind::DualOp && t->text == "^*") op = BinaryOp::DualMul;
      else break;
      ++pos_;
      ExprPtr rhs = parse_unary();
      const Span span{lhs->span.begin, rhs->span.end};
      lhs = node(Binary{op, std::move(lhs), std::move(rhs)}, span);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    const Token* t = peek();
    if (t && ((t->kind == TokenKind::ClassicalOp && t->text == "-") ||
              (t->kind == TokenKind::DeformedOp && t->text == "@-"))) {
      const UnaryOp op = t->kind == TokenKind::ClassicalOp ? UnaryOp::Neg : UnaryOp::DeformedNeg;
      const std::size_t begin = t->span.begin;
      ++pos_;
      ExprPtr operand = parse_primary();
      const Span span{begin, operand->span.end};
      return node(Unary{op, std::move(operand)}, span);
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token* t = peek();
    if (!t) throw ParseError(error_offset(), "an operand");
    switch (t->kind) {
      case TokenKind::Number:
        ++pos_;
        return node(NumberLit{t->number}, t->span);
      case TokenKind::Ident:
        ++pos_;
        return node(Var{t->text}, t->span);
      case TokenKind::FuncName: {
        const Token func = *t;
        ++pos_;
        expect(TokenKind::LParen, "'(' after function name");
        std::vector<ExprPtr> args;
        {
          NestingGuard guard(*this);
          args.push_back(parse_additive());
          while (peek() && peek()->kind == TokenKind::Comma) {
            ++pos_;
            args.push_back(parse_additive());
          }
        }
        const Token* rp = peek();
        if (!rp || rp->kind != TokenKind::RParen)
          throw ParseError(error_offset(), "')'");
        ++pos_;
        if (args.size() != 1)
          throw ParseError(func.span.begin, "exactly one argument to " + func.text);
        FuncKind kind;
        if (func.text == "qexp") kind = FuncKind::QExp;
        else if (func.text == "qln") kind = FuncKind::QLn;
        else if (func.text == "exp") kind = FuncKind::Exp;
        else kind = FuncKind::Ln;
        return node(Call{kind, std::move(args.front())}, Span{func.span.begin, rp->span.end});
      }
      case TokenKind::LParen: {
        const std::size_t begin = t->span.begin;
        ++pos_;
        ExprPtr inner;
        {
          NestingGuard guard(*this);
          inner = parse_additive();
        }
        const Token* rp = peek();
        if (!rp || rp->kind != TokenKind::RParen)
          throw ParseError(error_offset(), "')'");
        inner->span = Span{begin, rp->span.end};
        ++pos_;
        return inner;
      }
      default:
        throw ParseError(t->span.begin, "an operand");
    }
  }

  void expect(TokenKind kind, const std::string& what) {
    const Token* t = peek();
    if (!t || t->kind != kind) throw ParseError(error_offset(), what);
    ++pos_;
  }

  const std::vector<Token>& tokens_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

}  // namespace

ExprPtr parse(const std::vector<Token>& tokens, const ParseOptions& opts) {
  return Parser(tokens, opts).run();
}

ExprPtr parse_text(std::string_view input, const ParseOptions& opts) {
  return parse(tokenize(input), opts);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

CheckedValue apply_binary(BinaryOp op, const EvalEnv& env, double l, double r) {
  switch (op) {
    case BinaryOp::Add: return checked(l + r);
    case BinaryOp::Sub: return checked(l - r);
    case BinaryOp::Mul: return checked(l * r);
    case BinaryOp::Div:
      if (r == 0.0) return CheckedValue::fail(DomainViolation::SingularDenominator);
      return checked(l / r);
    case BinaryOp::DeformedAdd: return add_a(env.deformation, l, r);
    case BinaryOp::DeformedSub: return sub_a(env.deformation, l, r);
    case BinaryOp::DeformedMul: return mul_a(env.deformation, l, r);
    case BinaryOp::DeformedDiv: return div_a(env.deformation, l, r);
    case BinaryOp::DualAdd: return add_dual(env.deformation, l, r);
    case BinaryOp::DualMul: return mul_dual(env.deformation, l, r);
  }
  return CheckedValue::fail(DomainViolation::Overflow);
}

CheckedValue apply_call(FuncKind func, const EvalEnv& env, double v) {
  switch (func) {
    case FuncKind::QExp: return q_exp(env.deformation, v, env.policy);
    case FuncKind::QLn: return q_ln(env.deformation, v);
    case FuncKind::Exp: return checked(std::exp(v));
    case FuncKind::Ln:
      if (v <= 0.0) return CheckedValue::fail(DomainViolation::NonPositiveArgument);
      return checked(std::log(v));
  }
  return CheckedValue::fail(DomainViolation::Overflow);
}

EvalResult domain_failure(DomainViolation v, Span span) {
  EvalError err;
  err.kind = EvalError::Kind::Domain;
  err.violation = v;
  err.span = span;
  return EvalResult::fail(std::move(err));
}

}  // namespace

std::string EvalError::message() const {
  if (kind == Kind::UnboundVariable) return "unbound variable '" + name + "'";
  switch (violation) {
    case DomainViolation::NonPositiveBracket: return "non-positive bracket 1 + a*x";
    case DomainViolation::NonPositiveArgument: return "argument must be positive";
    case DomainViolation::NonPositiveBase: return "non-positive base of a 1/a power";
    case DomainViolation::SingularDenominator: return "singular denominator 1 + a*y = 0";
    case DomainViolation::Overflow: return "result out of floating range";
  }
  return "domain error";
}

EvalResult evaluate(const Expr& e, const EvalEnv& env) {
  struct Visitor {
    const EvalEnv& env;
    const Expr& expr;

    EvalResult operator()(const NumberLit& n) const { return EvalResult::ok(n.value); }

    EvalResult operator()(const Var& v) const {
      const auto it = env.bindings.find(v.name);
      if (it == env.bindings.end()) {
        EvalError err;
        err.kind = EvalError::Kind::UnboundVariable;
        err.name = v.name;
        err.span = expr.span;
        return EvalResult::fail(std::move(err));
      }
      return EvalResult::ok(it->second);
    }

    EvalResult operator()(const Unary& u) const {
      const EvalResult operand = evaluate(*u.operand, env);
      if (!operand) return operand;
      const CheckedValue r = u.op == UnaryOp::Neg ? checked(-operand.value())
                                                  : neg_a(env.deformation, operand.value());
      if (!r) return domain_failure(r.violation(), expr.span);
      return EvalResult::ok(r.value());
    }

    EvalResult operator()(const Binary& b) const {
      const EvalResult lhs = evaluate(*b.lhs, env);
      if (!lhs) return lhs;
      const EvalResult rhs = evaluate(*b.rhs, env);
      if (!rhs) return rhs;
      const CheckedValue r = apply_binary(b.op, env, lhs.value(), rhs.value());
      if (!r) return domain_failure(r.violation(), expr.span);
      return EvalResult::ok(r.value());
    }

    EvalResult operator()(const Call& c) const {
      const EvalResult arg = evaluate(*c.arg, env);
      if (!arg) return arg;
      const CheckedValue r = apply_call(c.func, env, arg.value());
      if (!r) return domain_failure(r.violation(), expr.span);
      return EvalResult::ok(r.value());
    }
  };
  return std::visit(Visitor{env, e}, e.node);
}

// ---------------------------------------------------------------------------
// Printing

const char* symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::DeformedAdd: return "@+";
    case BinaryOp::DeformedSub: return "@-";
    case BinaryOp::DeformedMul: return "@*";
    case BinaryOp::DeformedDiv: return "@/";
    case BinaryOp::DualAdd: return "^+";
    case BinaryOp::DualMul: return "^*";
  }
  return "?";
}

const char* symbol(UnaryOp op) { return op == UnaryOp::Neg ? "-" : "@-"; }

const char* func_name(FuncKind f) {
  switch (f) {
    case FuncKind::QExp: return "qexp";
    case FuncKind::QLn: return "qln";
    case FuncKind::Exp: return "exp";
    case FuncKind::Ln: return "ln";
  }
  return "?";
}

namespace {

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Sub:
    case BinaryOp::DeformedAdd:
    case BinaryOp::DeformedSub:
    case BinaryOp::DualAdd:
      return 1;
    default:
      return 2;
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

void print_node(const Expr& e, int min_prec, std::string& out);

void print_primary_or_parens(const Expr& e, std::string& out) {
  const bool primary = std::holds_alternative<NumberLit>(e.node) ||
                       std::holds_alternative<Var>(e.node) ||
                       std::holds_alternative<Call>(e.node);
  if (primary) {
    print_node(e, 0, out);
  } else {
    out += '(';
    print_node(e, 0, out);
    out += ')';
  }
}

void print_node(const Expr& e, int min_prec, std::string& out) {
  struct Visitor {
    int min_prec;
    std::string& out;

    void operator()(const NumberLit& n) const { out += format_number(n.value); }
    void operator()(const Var& v) const { out += v.name; }

    void operator()(const Unary& u) const {
      out += symbol(u.op);
      print_primary_or_parens(*u.operand, out);
    }

    void operator()(const Call& c) const {
      out += func_name(c.func);
      out += '(';
      print_node(*c.arg, 0, out);
      out += ')';
    }

    void operator()(const Binary& b) const {
      const int prec = precedence(b.op);
      const bool parens = prec < min_prec;
      if (parens) out += '(';
      print_node(*b.lhs, prec, out);
      out += ' ';
      out += symbol(b.op);
      out += ' ';
      print_node(*b.rhs, prec + 1, out);  // left-associative: equal tier on the right needs parens
      if (parens) out += ')';
    }
  };
  std::visit(Visitor{min_prec, out}, e.node);
}

}  // namespace

std::string pretty_print(const Expr& e) {
  std::string out;
  print_node(e, 0, out);
  return out;
}

std::size_t tree_depth(const Expr& e) {
  std::size_t deepest = 0;
  std::vector<std::pair<const Expr*, std::size_t>> stack;
  stack.emplace_back(&e, 1);
  while (!stack.empty()) {
    const auto [node, depth] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, depth);
    if (const auto* u = std::get_if<Unary>(&node->node)) {
      stack.emplace_back(u->operand.get(), depth + 1);
    } else if (const auto* b = std::get_if<Binary>(&node->node)) {
      stack.emplace_back(b->lhs.get(), depth + 1);
      stack.emplace_back(b->rhs.get(), depth + 1);
    } else if (const auto* c = std::get_if<Call>(&node->node)) {
      stack.emplace_back(c->arg.get(), depth + 1);
    }
  }
  return deepest;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* n = std::get_if<NumberLit>(&a.node))
    return n->value == std::get<NumberLit>(b.node).value;
  if (const auto* v = std::get_if<Var>(&a.node)) return v->name == std::get<Var>(b.node).name;
  if (const auto* u = std::get_if<Unary>(&a.node)) {
    const auto& other = std::get<Unary>(b.node);
    return u->op == other.op && structurally_equal(*u->operand, *other.operand);
  }
  if (const auto* bin = std::get_if<Binary>(&a.node)) {
    const auto& other = std::get<Binary>(b.node);
    return bin->op == other.op && structurally_equal(*bin->lhs, *other.lhs) &&
           structurally_equal(*bin->rhs, *other.rhs);
  }
  const auto& call = std::get<Call>(a.node);
  const auto& other = std::get<Call>(b.node);
  return call.func == other.func && structurally_equal(*call.arg, *other.arg);
}

}  // namespace qalg::expr
