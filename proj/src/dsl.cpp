#include "cybelab/dsl.hpp"

#include <cctype>
#include <sstream>

#include "cybelab/errors.hpp"

namespace cybelab {

namespace {

enum class Tok { Number, Name, Plus, Minus, Star, Slash, Caret, LParen, RParen, TensorOp, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Parser {
public:
  explicit Parser(const std::string& text) : src_(text) { lex(); }

  DslExpr parse() {
    DslExpr e = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'", peek().offset);
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& what, std::size_t offset) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(what, line, col);
  }

  int column_of(std::size_t offset) const {
    int col = 1;
    for (std::size_t i = 0; i < offset && i < src_.size(); ++i) col = src_[i] == '\n' ? 1 : col + 1;
    return col;
  }

  void lex() {
    std::size_t i = 0;
    while (i < src_.size()) {
      const char c = src_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
        toks_.push_back({Tok::Number, src_.substr(i, j - i), i});
        i = j;
        continue;
      }
      if (src_.compare(i, 3, "(x)") == 0) {
        toks_.push_back({Tok::TensorOp, "(x)", i});
        i += 3;
        continue;
      }
      Tok k;
      switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        default:
          if (c == 'e' || c == 'f' || c == 'h' || c == 't' || c == 'l' || c == 'm') {
            if (i + 1 < src_.size() && std::isalnum(static_cast<unsigned char>(src_[i + 1])))
              fail("unknown identifier", i);
            k = Tok::Name;
            break;
          }
          fail(std::string("unexpected character '") + c + "'", i);
      }
      toks_.push_back({k, std::string(1, c), i});
      ++i;
    }
    toks_.push_back({Tok::End, "end of input", src_.size()});
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  DslExpr node(DslExpr::Op op, std::vector<DslExpr> args, std::size_t offset) const {
    DslExpr e;
    e.op = op;
    e.args = std::move(args);
    e.column = column_of(offset);
    return e;
  }

  DslExpr expr() {
    const std::size_t at = peek().offset;
    DslExpr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const auto op = next().kind == Tok::Plus ? DslExpr::Op::Add : DslExpr::Op::Sub;
      lhs = node(op, {std::move(lhs), term()}, at);
    }
    return lhs;
  }

  DslExpr term() {
    const std::size_t at = peek().offset;
    DslExpr lhs = unary();
    for (;;) {
      if (accept(Tok::Star)) {
        lhs = node(DslExpr::Op::Mul, {std::move(lhs), unary()}, at);
      } else if (accept(Tok::Slash)) {
        lhs = node(DslExpr::Op::Div, {std::move(lhs), atomfactor()}, at);
      } else {
        return lhs;
      }
    }
  }

  DslExpr unary() {
    const std::size_t at = peek().offset;
    if (accept(Tok::Minus)) return node(DslExpr::Op::Neg, {unary()}, at);
    return tensor();
  }

  DslExpr tensor() {
    const std::size_t at = peek().offset;
    DslExpr lhs = power();
    while (accept(Tok::TensorOp)) lhs = node(DslExpr::Op::Tensor, {std::move(lhs), power()}, at);
    return lhs;
  }

  DslExpr power() {
    const std::size_t at = peek().offset;
    DslExpr base = primary();
    if (!accept(Tok::Caret)) return base;
    bool neg = accept(Tok::Minus);
    if (peek().kind != Tok::Number) fail("expected an integer exponent", peek().offset);
    DslExpr p = node(DslExpr::Op::Pow, {std::move(base)}, at);
    p.number = Scalar(next().text);
    if (neg) p.number = -p.number;
    return p;
  }

  DslExpr atomfactor() {
    const Token& t = peek();
    if (t.kind == Tok::Name && (t.text == "l" || t.text == "m")) return power();
    if (t.kind == Tok::Number || t.kind == Tok::LParen) return power();
    fail("expected a denominator: number, variable or parenthesized expression", t.offset);
  }

  DslExpr primary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Number: {
        DslExpr e = node(DslExpr::Op::Number, {}, t.offset);
        e.number = Scalar(t.text);
        return e;
      }
      case Tok::Name: {
        const char c = t.text[0];
        DslExpr e = node(c == 'l' || c == 'm' ? DslExpr::Op::Variable : DslExpr::Op::Symbol, {}, t.offset);
        e.name = c;
        return e;
      }
      case Tok::LParen: {
        DslExpr e = expr();
        if (!accept(Tok::RParen)) fail("expected ')'", peek().offset);
        return e;
      }
      default: fail("unexpected '" + t.text + "'", t.offset);
    }
  }

  std::string src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

[[noreturn]] void type_error(const DslExpr& e, const std::string& what) { throw SyntaxError(what, 1, e.column); }

const RatFn* as_scalar(const DslValue& v) { return std::get_if<RatFn>(&v); }

DslValue scale(const RatFn& c, const DslValue& v) {
  if (auto s = std::get_if<RatFn>(&v)) return c * *s;
  if (auto x = std::get_if<Sl2Vec<RatFn>>(&v)) return c * *x;
  return c * std::get<Tensor2<RatFn>>(v);
}

}  // namespace

std::string DslExpr::to_string() const {
  switch (op) {
    case Op::Number: return number.get_str();
    case Op::Symbol:
    case Op::Variable: return std::string(1, name);
    case Op::Neg: return "(-" + args[0].to_string() + ")";
    case Op::Pow: return "(" + args[0].to_string() + "^" + number.get_str() + ")";
    default: break;
  }
  const char* sym = op == Op::Add ? " + " : op == Op::Sub ? " - " : op == Op::Mul ? " * " : op == Op::Div ? " / " : "(x)";
  return "(" + args[0].to_string() + sym + args[1].to_string() + ")";
}

DslExpr parse_expr(const std::string& text) { return Parser(text).parse(); }

DslValue evaluate(const DslExpr& e) {
  using Op = DslExpr::Op;
  switch (e.op) {
    case Op::Number: return RatFn(e.number);
    case Op::Variable: return RatFn::var(e.name == 'l' ? Var::L : Var::M);
    case Op::Symbol:
      switch (e.name) {
        case 'e': return Sl2Vec<RatFn>::basis(Basis::E, RatFn(1));
        case 'f': return Sl2Vec<RatFn>::basis(Basis::F, RatFn(1));
        case 'h': return Sl2Vec<RatFn>::basis(Basis::H, RatFn(1));
        default: return casimir<RatFn>();
      }
    case Op::Neg: return scale(RatFn(-1), evaluate(e.args[0]));
    case Op::Pow: {
      const DslValue b = evaluate(e.args[0]);
      const RatFn* s = as_scalar(b);
      if (!s) type_error(e, "only scalar functions can be raised to a power");
      if (e.number.get_den() != 1) type_error(e, "exponent must be an integer");
      return s->pow(static_cast<int>(e.number.get_num().get_si()));
    }
    default: break;
  }
  const DslValue a = evaluate(e.args[0]);
  const DslValue b = evaluate(e.args[1]);
  switch (e.op) {
    case Op::Add:
    case Op::Sub: {
      if (a.index() != b.index()) type_error(e, "cannot add values of different kinds");
      const RatFn sign(e.op == Op::Add ? 1 : -1);
      if (auto s = as_scalar(a)) return *s + sign * std::get<RatFn>(b);
      if (auto x = std::get_if<Sl2Vec<RatFn>>(&a)) return *x + sign * std::get<Sl2Vec<RatFn>>(b);
      return std::get<Tensor2<RatFn>>(a) + sign * std::get<Tensor2<RatFn>>(b);
    }
    case Op::Mul:
      if (auto s = as_scalar(a)) return scale(*s, b);
      if (auto s = as_scalar(b)) return scale(*s, a);
      type_error(e, "product of two non-scalar values; use (x) for the tensor product");
    case Op::Div: {
      const RatFn* s = as_scalar(b);
      if (!s) type_error(e.args[1], "denominator must be a scalar function");
      if (s->is_zero()) type_error(e.args[1], "division by zero");
      return scale(s->inverse(), a);
    }
    case Op::Tensor: {
      auto x = std::get_if<Sl2Vec<RatFn>>(&a);
      auto y = std::get_if<Sl2Vec<RatFn>>(&b);
      if (!x || !y) type_error(e, "tensor product needs two sl2 elements");
      Tensor2<RatFn> t;
      for (Basis p : kBasis)
        for (Basis q : kBasis)
          if (!x->at(p).is_zero() && !y->at(q).is_zero()) t.add({p, q}, x->at(p) * y->at(q));
      return t;
    }
    default: type_error(e, "unsupported node");
  }
}

Tensor2<RatFn> parse_tensor(const std::string& text) {
  const DslExpr e = parse_expr(text);
  const DslValue v = evaluate(e);
  if (auto t = std::get_if<Tensor2<RatFn>>(&v)) return *t;
  if (auto s = std::get_if<RatFn>(&v); s && s->is_zero()) return {};
  throw SyntaxError("expression is not a two-leg tensor", 1, 1);
}

std::string print_ratfn(const RatFn& f) { return f.to_string(); }

std::string print_tensor(const Tensor2<RatFn>& t) {
  if (t.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : t.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << print_ratfn(c) << ")*" << basis_name(k[0]) << "(x)" << basis_name(k[1]);
  }
  return os.str();
}

}  // namespace cybelab
