#pragma once

// Expression grammar for user-defined weights, symbols and test fields:
// affine maps, monomials, rational functions, exp/log/trig, and complex
// arithmetic on C ~ R^2. Every expression evaluates on complex scalars and
// on jets, so derivative oracles are exact for the whole grammar.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wco/core.hpp"
#include "wco/jet.hpp"

namespace wco {

class ParseError : public Error {
 public:
  using Error::Error;
};

class Expr {
 public:
  enum class Op {
    Const, Var, Add, Sub, Mul, Div, Neg, PowInt, PowConst,
    Exp, Log, Sin, Cos, Sqrt, Conj, Re, Im
  };

  static Expr constant(Complex c);
  static Expr variable(int index);
  static Expr unary(Op op, Expr a);
  static Expr binary(Op op, Expr a, Expr b);
  static Expr power(Expr base, Expr exponent);

  Op op() const { return node_->op; }
  bool is_constant() const { return node_->op == Op::Const; }
  Complex constant_value() const { return node_->value; }
  /// Largest variable index referenced, -1 if none.
  int max_variable() const;

  Complex evaluate(std::span<const Complex> x) const { return eval(*node_, x); }
  Jet evaluate(std::span<const Jet> x) const { return eval(*node_, x); }

 private:
  struct Node {
    Op op = Op::Const;
    Complex value{};
    int index = 0;  // variable index or integer exponent
    std::shared_ptr<const Node> a, b;
  };

  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  template <class T>
  static T eval(const Node& n, std::span<const T> x);

  std::shared_ptr<const Node> node_;
};

/// Parses `text` over the named real variables. Recognized extras:
///   i, pi, e        constants
///   z               x_0 + i x_1 when there are exactly two variables and no
///                   variable is itself called z
///   exp log sin cos sqrt conj re im
///   + - * / ^       (^ binds tighter than unary minus; exponent is constant)
Expr parse_expr(std::string_view text, const std::vector<std::string>& variables);

/// x0, x1, ..., x{d-1}.
std::vector<std::string> default_variables(int d);

}  // namespace wco
