#include "wco/diff_operator.hpp"

namespace wco {

namespace {

Complex monomial(const MultiIndex& alpha, std::span<const Complex> xi) {
  Complex v(1.0);
  for (std::size_t j = 0; j < alpha.size(); ++j)
    for (int k = 0; k < alpha[j]; ++k) v *= xi[j];
  return v;
}

}  // namespace

int DiffOperator::dim() const {
  return coefficients.empty() ? 0 : static_cast<int>(coefficients.begin()->first.size());
}

int DiffOperator::order() const {
  int m = 0;
  for (const auto& [alpha, a] : coefficients)
    if (a != Complex(0.0)) m = std::max(m, wco::order(alpha));
  return m;
}

Complex DiffOperator::symbol(std::span<const Complex> xi) const {
  Complex s(0.0);
  for (const auto& [alpha, a] : coefficients) s += a * monomial(alpha, xi);
  return s;
}

Complex DiffOperator::principal_symbol(std::span<const Complex> xi) const {
  const int m = order();
  Complex s(0.0);
  for (const auto& [alpha, a] : coefficients)
    if (wco::order(alpha) == m) s += a * monomial(alpha, xi);
  return s;
}

DiffOperator DiffOperator::laplace(int d) {
  DiffOperator P;
  for (int j = 0; j < d; ++j) {
    MultiIndex a(static_cast<std::size_t>(d), 0);
    a[static_cast<std::size_t>(j)] = 2;
    P.coefficients[a] = 1.0;
  }
  P.elliptic = P.hypoelliptic = true;
  P.name = "laplace";
  return P;
}

DiffOperator DiffOperator::heat(int space_dim) {
  const int d = space_dim + 1;
  DiffOperator P;
  P.coefficients[unit_index(d, 0)] = 1.0;
  for (int j = 1; j < d; ++j) {
    MultiIndex a(static_cast<std::size_t>(d), 0);
    a[static_cast<std::size_t>(j)] = 2;
    P.coefficients[a] = -1.0;
  }
  P.hypoelliptic = true;
  P.name = "heat";
  return P;
}

DiffOperator DiffOperator::cauchy_riemann() {
  DiffOperator P;
  P.coefficients[{1, 0}] = 0.5;
  P.coefficients[{0, 1}] = Complex(0.0, 0.5);
  P.elliptic = P.hypoelliptic = true;
  P.name = "cauchy_riemann";
  return P;
}

DiffOperator DiffOperator::from_triples(
    int dim, const std::vector<std::tuple<MultiIndex, double, double>>& terms, std::string name) {
  DiffOperator P;
  P.name = std::move(name);
  for (const auto& [alpha, re, im] : terms) {
    if (static_cast<int>(alpha.size()) != dim)
      throw Error("multi-index " + to_string(alpha) + " does not match dimension");
    P.coefficients[alpha] += Complex(re, im);
  }
  return P;
}

}  // namespace wco
