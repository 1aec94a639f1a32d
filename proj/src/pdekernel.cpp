#include "wco/pdekernel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace wco {

Complex apply_operator(const DiffOperator& P, const ScalarField& u, const Point& x,
                       const Domain* domain) {
  const Jet j = derivative_jet(u, x, P.order(), domain);
  Complex s(0.0);
  for (const auto& [alpha, a] : P.coefficients)
    if (a != Complex(0.0)) s += a * j.derivative(alpha);
  return s;
}

double membership_residual(const DiffOperator& P, const ScalarField& u, const CompactGrid& grid) {
  const Domain* X = grid.domain().get();
  double r = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    r = std::max(r, std::abs(apply_operator(P, u, grid.point(k), X)));
  return r;
}

ExponentialSolution make_exponential_solution(const DiffOperator& P,
                                              const std::vector<Complex>& zeta) {
  if (static_cast<int>(zeta.size()) != P.dim()) throw Error("zeta has the wrong dimension");
  const Complex p = P.symbol(zeta);
  if (!(std::abs(p) < 1e-12)) throw NotInVariety(p);

  const int d = static_cast<int>(zeta.size());
  auto exponent = [zeta](const Point& x) {
    Complex s(0.0);
    for (std::size_t j = 0; j < zeta.size(); ++j) s += zeta[j] * x[static_cast<Eigen::Index>(j)];
    return s;
  };
  ScalarField::ValueFn value = [exponent](const Point& x) { return std::exp(exponent(x)); };
  ScalarField::JetFn jet = [zeta](const std::vector<Jet>& x) {
    Jet s = x[0] * zeta[0];
    for (std::size_t j = 1; j < zeta.size(); ++j) s = s + x[j] * zeta[j];
    return exp(s);
  };
  ScalarField::DerivFn deriv = [zeta, exponent](const MultiIndex& alpha, const Point& x) {
    Complex z(1.0);
    for (std::size_t j = 0; j < alpha.size(); ++j)
      for (int k = 0; k < alpha[j]; ++k) z *= zeta[j];
    return z * std::exp(exponent(x));
  };
  std::string label = "e_zeta(";
  for (std::size_t j = 0; j < zeta.size(); ++j) {
    if (j) label += ",";
    label += format_double(zeta[j].real()) + (zeta[j].imag() < 0 ? "" : "+") +
             format_double(zeta[j].imag()) + "i";
  }
  label += ")";
  return {zeta, ScalarField(d, value, jet, label).with_derivative(deriv)};
}

EllipticSpotCheck elliptic_spot_check(const DiffOperator& P, int samples, unsigned seed) {
  const int d = P.dim();
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  EllipticSpotCheck out;
  out.min_principal = std::numeric_limits<double>::infinity();
  std::vector<Complex> xi(static_cast<std::size_t>(d));
  for (int s = 0; s < samples; ++s) {
    double n2 = 0.0;
    std::vector<double> v(static_cast<std::size_t>(d));
    for (auto& c : v) {
      c = normal(rng);
      n2 += c * c;
    }
    const double n = std::sqrt(n2);
    for (int j = 0; j < d; ++j) xi[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j)] / n;
    const double a = std::abs(P.principal_symbol(xi));
    out.min_principal = std::min(out.min_principal, a);
    out.max_principal = std::max(out.max_principal, a);
  }
  out.passes = out.max_principal > 0.0 && out.min_principal > 1e-8 * out.max_principal;
  return out;
}

InvarianceVerdict verify_heat_invariance(const ScalarField& w, const SelfMap& psi,
                                         const CompactGrid& probe, double tol) {
  const int D = psi.dim();
  if (D < 2) throw Error("heat invariance needs dimension 1 + d with d >= 1");
  if (w.dim() != D) throw Error("weight and symbol dimensions differ");
  const int d = D - 1;
  const DiffOperator H = DiffOperator::heat(d);
  const Domain* X = probe.domain().get();

  std::vector<ScalarField> wpsi;
  for (int j = 0; j < D; ++j) wpsi.push_back(w * psi.component(j));

  double a_weight = 0, a_wpsi = 0, b = 0, c_time = 0, c_equal = 0, d_orth = 0;
  for (std::size_t k = 0; k < probe.size(); ++k) {
    const Point x = probe.point(k);
    const Complex wx = w(x);
    // grad_x psi_j, spatial coordinates 1..d.
    std::vector<std::vector<Complex>> grad(static_cast<std::size_t>(D));
    for (int j = 0; j < D; ++j) {
      const Jet jj = derivative_jet(psi.component(j), x, 1, X);
      for (int i = 1; i < D; ++i) grad[static_cast<std::size_t>(j)].push_back(jj.derivative(unit_index(D, i)));
    }
    auto dot = [&](int j, int l) {
      Complex s(0.0);
      for (int i = 0; i < d; ++i)
        s += grad[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
             grad[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)];
      return s;
    };

    a_weight = std::max(a_weight, std::abs(apply_operator(H, w, x, X)));
    for (int j = 1; j < D; ++j)
      a_wpsi = std::max(a_wpsi, std::abs(apply_operator(H, wpsi[static_cast<std::size_t>(j)], x, X)));
    b = std::max(b, std::abs(apply_operator(H, wpsi[0], x, X) - wx * dot(1, 1)));
    c_time = std::max(c_time, std::abs(wx * dot(0, 0)));
    for (int j = 1; j < D; ++j)
      for (int l = j + 1; l < D; ++l) c_equal = std::max(c_equal, std::abs(wx * (dot(j, j) - dot(l, l))));
    for (int j = 0; j < D; ++j)
      for (int l = j + 1; l < D; ++l) d_orth = std::max(d_orth, std::abs(wx * dot(j, l)));
  }

  InvarianceVerdict v;
  v.probe = probe;
  v.tol = tol;
  auto put = [&](const std::string& key, double r) { v.conditions[key] = {r, r < tol}; };
  put("a_weight", a_weight);
  put("a_wpsi_j", a_wpsi);
  put("b", b);
  put("c_time", c_time);
  put("c_equal", c_equal);
  put("d_orth", d_orth);
  v.overall = std::all_of(v.conditions.begin(), v.conditions.end(),
                          [](const auto& kv) { return kv.second.pass; });
  return v;
}

std::vector<ScalarField> heat_solutions(int space_dim) {
  if (space_dim < 1) throw Error("heat solutions need d >= 1");
  const auto vars = default_variables(space_dim + 1);
  std::vector<ScalarField> out;
  out.push_back(ScalarField::parse("1", vars));
  for (int j = 1; j <= space_dim; ++j) out.push_back(ScalarField::parse(vars[static_cast<std::size_t>(j)], vars));
  std::string sq;
  for (int j = 1; j <= space_dim; ++j) sq += vars[static_cast<std::size_t>(j)] + "^2 + ";
  out.push_back(ScalarField::parse(sq + std::to_string(2 * space_dim) + "*x0", vars));
  out.push_back(ScalarField::parse("exp(x0 + x1)", vars));
  out.push_back(ScalarField::parse("exp(i*x0 + sqrt(i)*x1)", vars));
  return out;
}

ClosureReport closure_sampling_check(const WCOperator& op, const std::vector<ScalarField>& solutions,
                                     const CompactGrid& probe, double tol) {
  const auto P = op.space.kernel_operator();
  if (!P) throw Error("closure check needs a kernel space (pde_kernel or holomorphic)");
  ClosureReport rep;
  rep.tol = tol;
  for (const auto& u : solutions) {
    const double r = membership_residual(*P, apply_iterate(op, u, 1), probe);
    rep.labels.push_back(u.label());
    rep.residuals.push_back(r);
    rep.residual = std::max(rep.residual, r);
  }
  rep.pass = rep.residual < tol;
  return rep;
}

}  // namespace wco
