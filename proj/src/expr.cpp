#include "wco/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

namespace wco {

namespace {

Complex ipow(Complex base, int n) {
  if (n < 0) return Complex(1.0) / ipow(base, -n);
  Complex result(1.0);
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

Complex lift(std::span<const Complex>, Complex c) { return c; }
Jet lift(std::span<const Jet> x, Complex c) {
  if (x.empty()) throw Error("constant jet needs at least one variable");
  return Jet(x[0].layout(), c);
}

Complex apply_pow_int(Complex v, int n) { return ipow(v, n); }
Jet apply_pow_int(const Jet& v, int n) { return pow(v, n); }
Complex apply_pow(Complex v, Complex p) { return std::pow(v, p); }
Jet apply_pow(const Jet& v, Complex p) { return pow(v, p); }
Complex apply_sqrt(Complex v) { return std::sqrt(v); }
Jet apply_sqrt(const Jet& v) { return pow(v, Complex(0.5)); }
Complex apply_re(Complex v) { return Complex(v.real()); }
Jet apply_re(const Jet& v) { return real(v); }
Complex apply_im(Complex v) { return Complex(v.imag()); }
Jet apply_im(const Jet& v) { return imag(v); }

}  // namespace

Expr Expr::constant(Complex c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = c;
  return Expr(n);
}

Expr Expr::variable(int index) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->index = index;
  return Expr(n);
}

Expr Expr::unary(Op op, Expr a) {
  if (a.is_constant()) {
    const Complex v = a.constant_value();
    switch (op) {
      case Op::Neg: return constant(-v);
      case Op::Exp: return constant(std::exp(v));
      case Op::Log: return constant(std::log(v));
      case Op::Sin: return constant(std::sin(v));
      case Op::Cos: return constant(std::cos(v));
      case Op::Sqrt: return constant(std::sqrt(v));
      case Op::Conj: return constant(std::conj(v));
      case Op::Re: return constant(v.real());
      case Op::Im: return constant(v.imag());
      default: break;
    }
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = a.node_;
  return Expr(n);
}

Expr Expr::binary(Op op, Expr a, Expr b) {
  if (a.is_constant() && b.is_constant()) {
    const Complex u = a.constant_value(), v = b.constant_value();
    switch (op) {
      case Op::Add: return constant(u + v);
      case Op::Sub: return constant(u - v);
      case Op::Mul: return constant(u * v);
      case Op::Div: return constant(u / v);
      default: break;
    }
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = a.node_;
  n->b = b.node_;
  return Expr(n);
}

Expr Expr::power(Expr base, Expr exponent) {
  if (!exponent.is_constant()) throw ParseError("exponent must be a constant");
  const Complex p = exponent.constant_value();
  const bool integral = p.imag() == 0.0 && std::abs(p.real()) <= 64.0 &&
                        p.real() == std::round(p.real());
  if (base.is_constant())
    return constant(integral ? ipow(base.constant_value(), static_cast<int>(p.real()))
                             : std::pow(base.constant_value(), p));
  auto n = std::make_shared<Node>();
  n->a = base.node_;
  if (integral) {
    n->op = Op::PowInt;
    n->index = static_cast<int>(p.real());
  } else {
    n->op = Op::PowConst;
    n->value = p;
  }
  return Expr(n);
}

int Expr::max_variable() const {
  int best = -1;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n->op == Op::Var) best = std::max(best, n->index);
    if (n->a) stack.push_back(n->a.get());
    if (n->b) stack.push_back(n->b.get());
  }
  return best;
}

template <class T>
T Expr::eval(const Node& n, std::span<const T> x) {
  switch (n.op) {
    case Op::Const: return lift(x, n.value);
    case Op::Var: return x[static_cast<std::size_t>(n.index)];
    case Op::Add: return eval(*n.a, x) + eval(*n.b, x);
    case Op::Sub: return eval(*n.a, x) - eval(*n.b, x);
    case Op::Mul: return eval(*n.a, x) * eval(*n.b, x);
    case Op::Div: return eval(*n.a, x) / eval(*n.b, x);
    case Op::Neg: return -eval(*n.a, x);
    case Op::PowInt: return apply_pow_int(eval(*n.a, x), n.index);
    case Op::PowConst: return apply_pow(eval(*n.a, x), n.value);
    case Op::Exp: return exp(eval(*n.a, x));
    case Op::Log: return log(eval(*n.a, x));
    case Op::Sin: return sin(eval(*n.a, x));
    case Op::Cos: return cos(eval(*n.a, x));
    case Op::Sqrt: return apply_sqrt(eval(*n.a, x));
    case Op::Conj: return conj(eval(*n.a, x));
    case Op::Re: return apply_re(eval(*n.a, x));
    case Op::Im: return apply_im(eval(*n.a, x));
  }
  throw Error("unknown expression node");
}

template Complex Expr::eval<Complex>(const Node&, std::span<const Complex>);
template Jet Expr::eval<Jet>(const Node&, std::span<const Jet>);

// Parser ---------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars)
      : text_(text), vars_(vars) {}

  Expr parse() {
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("in '" + std::string(text_) + "' at " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expression() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) lhs = Expr::binary(Expr::Op::Add, lhs, term());
      else if (accept('-')) lhs = Expr::binary(Expr::Op::Sub, lhs, term());
      else return lhs;
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = Expr::binary(Expr::Op::Mul, lhs, unary());
      else if (accept('/')) lhs = Expr::binary(Expr::Op::Div, lhs, unary());
      else return lhs;
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::unary(Expr::Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return Expr::power(base, unary());
    return base;
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (accept('(')) {
      Expr e = expression();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::string rest(text_.substr(pos_));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("bad number");
    }
    pos_ += used;
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name(text_.substr(start, pos_ - start));

    for (std::size_t k = 0; k < vars_.size(); ++k)
      if (vars_[k] == name) return Expr::variable(static_cast<int>(k));

    static const std::pair<const char*, Expr::Op> functions[] = {
        {"exp", Expr::Op::Exp},   {"log", Expr::Op::Log},   {"sin", Expr::Op::Sin},
        {"cos", Expr::Op::Cos},   {"sqrt", Expr::Op::Sqrt}, {"conj", Expr::Op::Conj},
        {"re", Expr::Op::Re},     {"im", Expr::Op::Im}};
    for (const auto& [fname, op] : functions) {
      if (name == fname) {
        if (!accept('(')) fail("expected '(' after " + name);
        Expr arg = expression();
        if (!accept(')')) fail("expected ')'");
        return Expr::unary(op, arg);
      }
    }

    if (name == "i") return Expr::constant(Complex(0.0, 1.0));
    if (name == "pi") return Expr::constant(std::numbers::pi);
    if (name == "e") return Expr::constant(std::numbers::e);
    if (name == "z" && vars_.size() == 2)
      return Expr::binary(Expr::Op::Add, Expr::variable(0),
                          Expr::binary(Expr::Op::Mul, Expr::constant(Complex(0.0, 1.0)),
                                       Expr::variable(1)));
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, const std::vector<std::string>& variables) {
  return Parser(text, variables).parse();
}

std::vector<std::string> default_variables(int d) {
  std::vector<std::string> v;
  for (int i = 0; i < d; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

}  // namespace wco
