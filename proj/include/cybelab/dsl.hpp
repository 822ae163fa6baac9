#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "cybelab/ratfn.hpp"
#include "cybelab/sl2.hpp"

namespace cybelab {

/// Abstract syntax of the catalog expression language (grammar in docs/dsl.md).
struct DslExpr {
  enum class Op { Number, Symbol, Variable, Add, Sub, Mul, Div, Tensor, Pow, Neg };
  Op op = Op::Number;
  Scalar number;      // Number; exponent of Pow
  char name = 0;      // Symbol: e f h t; Variable: l m
  std::vector<DslExpr> args;
  int column = 0;     // 1-based start position

  std::string to_string() const;  // fully parenthesized
};

/// SyntaxError with line/column on malformed input.
DslExpr parse_expr(const std::string& text);

/// A scalar function, an sl2 element with function coefficients, or a
/// two-leg tensor.
using DslValue = std::variant<RatFn, Sl2Vec<RatFn>, Tensor2<RatFn>>;

/// Type errors raise SyntaxError at the offending node; denominators outside the
/// atom set raise AtomEscape.
DslValue evaluate(const DslExpr& e);

/// parse + evaluate, requiring a two-leg tensor (a scalar 0 is accepted as the zero tensor).
Tensor2<RatFn> parse_tensor(const std::string& text);

/// Canonical text: terms in basis order, "(" coefficient ")*x(x)y" joined by " + ".
std::string print_tensor(const Tensor2<RatFn>& t);
std::string print_ratfn(const RatFn& f);

}  // namespace cybelab
