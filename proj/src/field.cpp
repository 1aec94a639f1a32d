#include "wco/field.hpp"

#include <sstream>

namespace wco {

ScalarField::ScalarField(int dim, ValueFn value, std::string label)
    : dim_(dim), value_(std::move(value)), label_(std::move(label)) {}

ScalarField::ScalarField(int dim, ValueFn value, JetFn jet, std::string label)
    : dim_(dim), value_(std::move(value)), jet_(std::move(jet)), label_(std::move(label)) {}

ScalarField ScalarField::from_expr(const Expr& expr, int dim, std::string label) {
  if (expr.max_variable() >= dim) throw ParseError("expression uses a variable beyond dimension");
  return ScalarField(
      dim,
      [expr, dim](const Point& x) {
        Complex buf[8];
        std::vector<Complex> heap;
        Complex* args = buf;
        if (dim > 8) {
          heap.resize(static_cast<std::size_t>(dim));
          args = heap.data();
        }
        for (int i = 0; i < dim; ++i) args[i] = Complex(x[i], 0.0);
        return expr.evaluate(std::span<const Complex>(args, static_cast<std::size_t>(dim)));
      },
      [expr](const std::vector<Jet>& x) { return expr.evaluate(std::span<const Jet>(x)); },
      std::move(label));
}

ScalarField ScalarField::parse(std::string_view text, const std::vector<std::string>& variables) {
  return from_expr(parse_expr(text, variables), static_cast<int>(variables.size()), std::string(text));
}

ScalarField ScalarField::constant(int dim, Complex c) {
  std::ostringstream os;
  if (c.imag() == 0.0) os << c.real();
  else os << c;
  return from_expr(Expr::constant(c), dim, os.str());
}

ScalarField ScalarField::coordinate(int dim, int i) {
  return from_expr(Expr::variable(i), dim, "x" + std::to_string(i));
}

std::optional<Complex> ScalarField::derivative(const MultiIndex& alpha, const Point& x) const {
  if (deriv_) return deriv_(alpha, x);
  if (!jet_) return std::nullopt;
  return jet_at(x, order(alpha)).derivative(alpha);
}

Jet ScalarField::jet_at(const Point& x, int ord) const {
  if (!jet_) throw Error("field '" + label_ + "' has no jet oracle");
  return jet_(seed_jets(x, ord));
}

ScalarField ScalarField::with_derivative(DerivFn deriv) const {
  ScalarField f = *this;
  f.deriv_ = std::move(deriv);
  return f;
}

ScalarField ScalarField::relabeled(std::string label) const {
  ScalarField f = *this;
  f.label_ = std::move(label);
  return f;
}

ScalarField ScalarField::without_oracle() const {
  return ScalarField(dim_, value_, label_);
}

namespace {

ScalarField combine(const ScalarField& a, const ScalarField& b, char op,
                    Complex (*value_op)(Complex, Complex), Jet (*jet_op)(const Jet&, const Jet&)) {
  const std::string label = "(" + a.label() + ")" + op + "(" + b.label() + ")";
  auto value = [a, b, value_op](const Point& x) { return value_op(a(x), b(x)); };
  if (a.has_jet() && b.has_jet())
    return ScalarField(a.dim(), value,
                       [a, b, jet_op](const std::vector<Jet>& x) { return jet_op(a(x), b(x)); },
                       label);
  return ScalarField(a.dim(), value, label);
}

}  // namespace

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return combine(
      a, b, '*', [](Complex u, Complex v) { return u * v; },
      [](const Jet& u, const Jet& v) { return u * v; });
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return combine(
      a, b, '+', [](Complex u, Complex v) { return u + v; },
      [](const Jet& u, const Jet& v) { return u + v; });
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return combine(
      a, b, '-', [](Complex u, Complex v) { return u - v; },
      [](const Jet& u, const Jet& v) { return u - v; });
}

ScalarField operator*(Complex c, const ScalarField& a) {
  return ScalarField::constant(a.dim(), c) * a;
}

// SelfMap ----------------------------------------------------------------------

SelfMap::SelfMap(std::vector<ScalarField> components, std::string label)
    : components_(std::move(components)), label_(std::move(label)) {
  if (label_.empty()) {
    std::ostringstream os;
    os << "(";
    for (std::size_t c = 0; c < components_.size(); ++c)
      os << (c ? ", " : "") << components_[c].label();
    os << ")";
    label_ = os.str();
  }
}

SelfMap SelfMap::identity(int d) {
  std::vector<ScalarField> comps;
  for (int i = 0; i < d; ++i) comps.push_back(ScalarField::coordinate(d, i));
  return SelfMap(std::move(comps), "id");
}

SelfMap SelfMap::affine(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, std::string label) {
  const int d = static_cast<int>(A.rows());
  std::vector<ScalarField> comps;
  for (int c = 0; c < d; ++c) {
    const Eigen::RowVectorXd row = A.row(c);
    const double shift = b[c];
    comps.emplace_back(
        d, [row, shift](const Point& x) { return Complex(row.dot(x) + shift, 0.0); },
        [row, shift](const std::vector<Jet>& x) {
          Jet acc(x[0].layout(), Complex(shift, 0.0));
          for (Eigen::Index i = 0; i < row.size(); ++i)
            if (row[i] != 0.0) acc += x[static_cast<std::size_t>(i)] * Complex(row[i], 0.0);
          return acc;
        },
        "affine" + std::to_string(c));
  }
  return SelfMap(std::move(comps), label.empty() ? "affine" : std::move(label));
}

SelfMap SelfMap::parse(const std::vector<std::string>& components,
                       const std::vector<std::string>& variables) {
  if (components.size() != variables.size())
    throw ParseError("a self-map needs one component per variable");
  std::vector<ScalarField> comps;
  for (const auto& c : components) comps.push_back(ScalarField::parse(c, variables));
  return SelfMap(std::move(comps));
}

SelfMap SelfMap::parse_complex(std::string_view text) {
  const std::vector<std::string> vars{"x", "y"};
  const Expr e = parse_expr(text, vars);
  std::vector<ScalarField> comps{
      ScalarField::from_expr(Expr::unary(Expr::Op::Re, e), 2, "re(" + std::string(text) + ")"),
      ScalarField::from_expr(Expr::unary(Expr::Op::Im, e), 2, "im(" + std::string(text) + ")")};
  return SelfMap(std::move(comps), std::string(text));
}

bool SelfMap::has_oracle() const {
  for (const auto& c : components_)
    if (!c.has_jet()) return false;
  return true;
}

Point SelfMap::operator()(const Point& x) const {
  Point y(static_cast<Eigen::Index>(components_.size()));
  for (std::size_t c = 0; c < components_.size(); ++c)
    y[static_cast<Eigen::Index>(c)] = components_[c](x).real();
  return y;
}

std::vector<Jet> SelfMap::operator()(const std::vector<Jet>& x) const {
  std::vector<Jet> y;
  y.reserve(components_.size());
  for (const auto& c : components_) y.push_back(real(c(x)));
  return y;
}

}  // namespace wco
