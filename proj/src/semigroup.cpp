#include "wco/semigroup.hpp"

#include <algorithm>
#include <cmath>

#include "wco/dynamics.hpp"

namespace wco {

namespace {

struct Kahan {
  Complex sum{0.0};
  Complex comp{0.0};
  void add(Complex v) {
    const Complex y = v - comp;
    const Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

double sup_on(const CompactGrid& grid, const ScalarField& f) {
  double s = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) s = std::max(s, std::abs(f(grid.point(k))));
  return s;
}

}  // namespace

double exp_tail_bound(double x, int N) {
  if (x < 0.0) throw Error("tail bound needs x >= 0");
  if (x == 0.0) return 0.0;
  const double n2 = N + 2.0;
  if (x >= n2) return std::numeric_limits<double>::infinity();
  // x^{N+1}/(N+1)! * sum_{j>=0} (x/(N+2))^j
  const double log_b = (N + 1.0) * std::log(x) - std::lgamma(N + 2.0) - std::log1p(-x / n2);
  return std::exp(log_b) * (1.0 + 1e-12);
}

int truncation_order(double x, double norm, double eps) {
  if (!(eps > 0.0)) throw Error("eps must be positive");
  if (norm == 0.0 || x == 0.0) return 0;
  for (int N = 0; N < 100000; ++N)
    if (norm * exp_tail_bound(x, N) < eps) return N;
  throw NoGrowthBound("truncation order exceeds 100000");
}

std::vector<double> series_coefficients(double t, int N) {
  std::vector<double> c(static_cast<std::size_t>(N) + 1);
  if (t > 50.0) {
    for (int k = 0; k <= N; ++k) c[static_cast<std::size_t>(k)] = std::exp(k * std::log(t) - std::lgamma(k + 1.0));
    return c;
  }
  c[0] = 1.0;
  for (int k = 1; k <= N; ++k) c[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k - 1)] * t / k;
  return c;
}

std::pair<ScalarField, TailBudget> exp_apply(const WCOperator& op, const ScalarField& f, double t,
                                             double eps, const SeminormSpec& K,
                                             const std::optional<SeminormSpec>& L,
                                             int orbit_horizon) {
  if (!(t >= 0.0)) throw Error("t must be nonnegative");
  if (!(eps > 0.0)) throw Error("eps must be positive");
  if (K.kind != SeminormSpec::Kind::Sup || (L && L->kind != SeminormSpec::Kind::Sup))
    throw Error("series certification uses sup seminorms");

  TailBudget budget;
  budget.t = t;
  budget.eps = eps;
  budget.target_spec = K.describe();
  budget.orbit_horizon = orbit_horizon;
  if (t == 0.0) {
    budget.source_spec = L ? L->describe() : K.describe();
    return {f, budget};
  }

  OrbitOptions oo;
  oo.horizon = orbit_horizon;
  const OrbitReport orbit = check_stable_orbits(op.symbol, K.grid, oo);
  if (!orbit.stable) throw NoGrowthBound("orbits of " + K.grid.source() + " are not stable");

  IterateSampler sampler(op, K.grid);
  sampler.advance_to(orbit_horizon);
  CompactGrid source;
  if (L) {
    for (std::size_t k = 0; k < sampler.size(); ++k)
      for (int m = 0; m <= orbit_horizon; ++m)
        if (!L->grid.covers(sampler.image(k, m)))
          throw NoGrowthBound("psi^" + std::to_string(m) + "(K) leaves " + L->describe());
    source = L->grid;
  } else {
    Eigen::MatrixXd pts(K.grid.dim(), static_cast<Eigen::Index>(sampler.size()) * (orbit_horizon + 1));
    Eigen::Index col = 0;
    for (std::size_t k = 0; k < sampler.size(); ++k)
      for (int m = 0; m <= orbit_horizon; ++m) pts.col(col++) = sampler.image(k, m);
    source = CompactGrid(std::move(pts), "orbit of " + K.grid.source(), K.grid.spacing(),
                         K.grid.domain());
  }
  budget.source_spec = L ? L->describe() : "sup over orbit of " + K.grid.source();
  budget.gamma = 1.1 * sup_on(source, op.weight);
  budget.f_norm_L = sup_on(source, f);
  const double x = t * budget.gamma;
  budget.N = truncation_order(x, budget.f_norm_L, eps);
  budget.tail_bound = budget.f_norm_L * exp_tail_bound(x, budget.N);

  const std::vector<double> coef = series_coefficients(t, budget.N);
  const int N = budget.N;
  const WCOperator opc = op;
  ScalarField::ValueFn value = [opc, f, coef, N](const Point& x0) {
    Kahan acc;
    Complex prod(1.0);
    Point y = x0;
    acc.add(f(y));
    for (int k = 1; k <= N; ++k) {
      prod *= opc.weight(y);
      y = opc.symbol(y);
      if (!y.allFinite() || (opc.domain() && !opc.domain()->contains(y))) throw LeftDomain(y, k);
      acc.add(coef[static_cast<std::size_t>(k)] * prod * f(y));
    }
    return acc.sum;
  };
  const std::string label = "T_" + format_double(t) + "(" + f.label() + ")";
  return {ScalarField(f.dim(), value, label), budget};
}

SemigroupLawReport check_semigroup_law(const WCOperator& op, const ScalarField& f, double t,
                                       double s, const CompactGrid& probe, double tol) {
  SemigroupLawReport rep;
  rep.t = t;
  rep.s = s;
  rep.tol = tol;
  rep.eps = tol / 10.0;
  const SeminormSpec K = SeminormSpec::sup(probe);
  const ScalarField whole = exp_apply(op, f, t + s, rep.eps, K).first;
  const ScalarField inner = exp_apply(op, f, s, rep.eps, K).first;
  const ScalarField outer = exp_apply(op, inner, t, rep.eps, K).first;
  for (std::size_t k = 0; k < probe.size(); ++k) {
    const Point x = probe.point(k);
    rep.defect = std::max(rep.defect, std::abs(whole(x) - outer(x)));
  }
  rep.pass = rep.defect < tol;
  return rep;
}

std::vector<double> default_h_sequence() { return {1e-1, 1e-2, 1e-3, 1e-4}; }

GeneratorReport check_generator(const WCOperator& op, const ScalarField& f,
                                const CompactGrid& probe, const std::vector<double>& h_sequence,
                                double tol) {
  if (h_sequence.empty()) throw Error("generator check needs step sizes");
  GeneratorReport rep;
  rep.tol = tol;
  rep.h = h_sequence;
  const SeminormSpec K = SeminormSpec::sup(probe);
  const ScalarField Cf = apply_iterate(op, f, 1);
  rep.scale = sup_on(probe, Cf);
  const double eps = 1e-14 * (1.0 + sup_on(probe, f));

  auto defect = [&](double h) {
    const ScalarField Th = exp_apply(op, f, h, eps, K).first;
    double dmax = 0.0;
    for (std::size_t k = 0; k < probe.size(); ++k) {
      const Point x = probe.point(k);
      dmax = std::max(dmax, std::abs((Th(x) - f(x)) / h - Cf(x)));
    }
    return dmax;
  };

  rep.ratio_in_band = true;
  for (double h : h_sequence) {
    const double d = defect(h);
    const double dh = defect(h / 2.0);
    rep.defects.push_back(d);
    rep.half_defects.push_back(dh);
    const double r = dh > 0.0 ? d / dh : std::numeric_limits<double>::quiet_NaN();
    rep.ratios.push_back(r);
    if (!(r >= 1.7 && r <= 2.3)) rep.ratio_in_band = false;
  }
  rep.decreasing = true;
  for (std::size_t i = 1; i < rep.defects.size(); ++i)
    if (!(rep.defects[i] < rep.defects[i - 1])) rep.decreasing = false;
  rep.pass = rep.decreasing && rep.defects.back() < tol * (1.0 + rep.scale);
  return rep;
}

}  // namespace wco
