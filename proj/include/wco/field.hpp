#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wco/core.hpp"
#include "wco/expr.hpp"
#include "wco/jet.hpp"

namespace wco {

/// A scalar field X -> K (K = C; real fields have zero imaginary part) with
/// an optional exact derivative oracle. The oracle is a jet evaluator: given
/// jets seeded at x it returns the field's jet, from which every partial
/// derivative up to the jet order is read off. Fields are immutable values.
class ScalarField {
 public:
  using ValueFn = std::function<Complex(const Point&)>;
  using JetFn = std::function<Jet(const std::vector<Jet>&)>;
  using DerivFn = std::function<Complex(const MultiIndex&, const Point&)>;

  ScalarField() = default;
  ScalarField(int dim, ValueFn value, std::string label);
  ScalarField(int dim, ValueFn value, JetFn jet, std::string label);

  static ScalarField from_expr(const Expr& expr, int dim, std::string label);
  static ScalarField parse(std::string_view text, const std::vector<std::string>& variables);
  static ScalarField constant(int dim, Complex c);
  static ScalarField coordinate(int dim, int i);

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  bool has_oracle() const { return static_cast<bool>(jet_) || static_cast<bool>(deriv_); }
  bool has_jet() const { return static_cast<bool>(jet_); }

  Complex operator()(const Point& x) const { return value_(x); }
  /// Requires has_jet().
  Jet operator()(const std::vector<Jet>& x) const { return jet_(x); }

  /// Exact derivative d^alpha f(x) when an oracle exists; nullopt otherwise.
  std::optional<Complex> derivative(const MultiIndex& alpha, const Point& x) const;

  /// Jet of the field at x, truncated at `order`. Requires has_jet().
  Jet jet_at(const Point& x, int order) const;

  /// Same field with a direct derivative oracle taking precedence over jets.
  ScalarField with_derivative(DerivFn deriv) const;
  ScalarField relabeled(std::string label) const;
  /// Same values, oracle removed (forces finite differences).
  ScalarField without_oracle() const;

  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(Complex c, const ScalarField& a);

 private:
  int dim_ = 0;
  ValueFn value_;
  JetFn jet_;
  DerivFn deriv_;
  std::string label_;
};

/// The symbol psi: X -> X, given by real-valued components psi_0..psi_{d-1}.
class SelfMap {
 public:
  SelfMap() = default;
  explicit SelfMap(std::vector<ScalarField> components, std::string label = {});

  static SelfMap identity(int d);
  /// x -> A x + b.
  static SelfMap affine(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, std::string label = {});
  /// Component expressions over the named variables.
  static SelfMap parse(const std::vector<std::string>& components,
                       const std::vector<std::string>& variables);
  /// A map of C ~ R^2 given by one complex expression in z (components re, im).
  static SelfMap parse_complex(std::string_view text);

  int dim() const { return static_cast<int>(components_.size()); }
  const std::vector<ScalarField>& components() const { return components_; }
  const ScalarField& component(int c) const { return components_[static_cast<std::size_t>(c)]; }
  const std::string& label() const { return label_; }
  bool has_oracle() const;

  Point operator()(const Point& x) const;
  /// Requires every component to have a jet oracle; imaginary parts dropped.
  std::vector<Jet> operator()(const std::vector<Jet>& x) const;

 private:
  std::vector<ScalarField> components_;
  std::string label_;
};

}  // namespace wco
