#include "wco/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wco {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const Domain& domain_of(const CompactGrid& grid, const Domain& fallback) {
  return grid.domain() ? *grid.domain() : fallback;
}

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double curvature = 0.0;
  double rms = 0.0;
};

LineFit fit_poly(const std::vector<double>& xs, const std::vector<double>& ys, int degree) {
  const auto n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd A(n, degree + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (int c = 0; c <= degree; ++c) {
      A(i, c) = p;
      p *= xs[static_cast<std::size_t>(i)];
    }
    b[i] = ys[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
  LineFit f;
  f.intercept = coef[0];
  f.slope = coef[1];
  if (degree >= 2) f.curvature = coef[2];
  f.rms = std::sqrt((A * coef - b).squaredNorm() / static_cast<double>(n));
  return f;
}

double sup_on(const CompactGrid& grid, const ScalarField& f) {
  double s = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) s = std::max(s, std::abs(f(grid.point(k))));
  return s;
}

// Grid of the closure proxy K_n, coarsened so the point count stays moderate.
CompactGrid level_grid(const DomainPtr& domain, int n, double spacing) {
  const int d = domain->dim();
  const double per_axis = std::pow(20000.0, 1.0 / d);
  const double h = std::max(spacing, 2.0 * n / per_axis);
  return build_exhaustion(domain, n, h).second;
}

}  // namespace

std::string to_string(GrowthClass c) {
  switch (c) {
    case GrowthClass::Bounded: return "bounded";
    case GrowthClass::Exponential: return "exponential";
    case GrowthClass::Superexponential: return "superexponential";
    case GrowthClass::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

// Stable orbits -------------------------------------------------------------

OrbitReport check_stable_orbits(const SelfMap& psi, const CompactGrid& K,
                                const OrbitOptions& options) {
  if (options.horizon < 1) throw Error("horizon must be >= 1");
  const Domain whole = Domain::whole(K.dim());
  const Domain& X = domain_of(K, whole);

  OrbitReport rep;
  rep.horizon = options.horizon;
  rep.level_trace.assign(static_cast<std::size_t>(options.horizon) + 1, 0.0);

  struct Track {
    Point y;
    bool gone = false;
  };
  std::vector<Track> tracks(K.size());
  for (std::size_t k = 0; k < K.size(); ++k) tracks[k].y = K.point(k);

  const auto n_max = static_cast<double>(options.n_max);
  for (int m = 0; m <= options.horizon; ++m) {
    double worst = 0.0;
    for (std::size_t k = 0; k < K.size(); ++k) {
      Track& t = tracks[k];
      if (!t.gone && m > 0) {
        t.y = psi(t.y);
        if (!t.y.allFinite() || !X.contains(t.y)) {
          t.gone = true;
          if (!rep.escape_evidence)
            rep.escape_evidence = EscapeEvidence{K.point(k), m, t.y.norm(), "left_domain"};
        }
      }
      const double level = t.gone ? kInf : required_level(X, t.y, options.pad);
      if (level > n_max && !rep.escape_evidence)
        rep.escape_evidence = EscapeEvidence{K.point(k), m, t.y.norm(), "exhaustion"};
      worst = std::max(worst, level);
    }
    rep.level_trace[static_cast<std::size_t>(m)] = worst;
  }

  const double top = *std::max_element(rep.level_trace.begin(), rep.level_trace.end());
  rep.stable = top <= n_max;
  if (rep.stable) {
    rep.enclosing_level = static_cast<int>(top);
    rep.escape_evidence.reset();
  } else {
    const std::size_t from = static_cast<std::size_t>(3 * options.horizon / 4);
    rep.monotone_escape = true;
    for (std::size_t m = from + 1; m < rep.level_trace.size(); ++m)
      if (rep.level_trace[m] < rep.level_trace[m - 1]) rep.monotone_escape = false;
  }
  return rep;
}

// Growth --------------------------------------------------------------------

SequenceFit classify_log_sequence(const std::vector<double>& log_values,
                                  const GrowthOptions& options) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < log_values.size(); ++i) {
    const double v = log_values[i];
    if (v == -kInf) continue;
    if (!std::isfinite(v)) return {GrowthClass::Superexponential, kInf, kInf};
    xs.push_back(static_cast<double>(i + 1));
    ys.push_back(v);
  }
  SequenceFit out;
  if (ys.size() < 2) {
    out.classification = GrowthClass::Bounded;
    return out;
  }
  const LineFit line = fit_poly(xs, ys, 1);
  out.slope = line.slope;
  out.residual = line.rms;
  const double excess = *std::max_element(ys.begin(), ys.end()) - ys.front();
  if (line.slope <= options.slope_tol && excess <= std::log(options.bound_factor)) {
    out.classification = GrowthClass::Bounded;
  } else if (line.slope > options.slope_tol && line.rms <= options.fit_tol) {
    out.classification = GrowthClass::Exponential;
  } else if (line.slope > options.slope_tol && ys.size() >= 3) {
    const LineFit quad = fit_poly(xs, ys, 2);
    out.classification = (quad.curvature > 0 && quad.rms < 0.5 * line.rms)
                             ? GrowthClass::Superexponential
                             : GrowthClass::Inconclusive;
  }
  return out;
}

GrowthReport estimate_growth(const WCOperator& op, const std::vector<ScalarField>& basis,
                             const SeminormSpec& K, const SeminormSpec& L, int horizon,
                             const GrowthOptions& options) {
  if (basis.empty()) throw EmptyBasis();
  if (horizon < 1) throw Error("horizon must be >= 1");

  GrowthReport rep;
  rep.target = K.describe();
  rep.source = L.describe();

  std::vector<double> log_norm_L;
  for (const auto& f : basis) {
    const double n = eval_seminorm(L, f);
    if (!(n > 0.0)) throw Error("basis element " + f.label() + " vanishes on " + rep.source);
    log_norm_L.push_back(std::log(n));
  }

  auto escape = [&](EscapeEvidence ev) {
    rep.classification = GrowthClass::Superexponential;
    rep.rate = kInf;
    rep.fit_residual = kInf;
    rep.evidence = std::move(ev);
    return rep;
  };

  // Every iterate image of K must stay in the region L stands for, otherwise
  // ||C^m f||_K is not controlled by ||f||_L at all.
  IterateSampler sampler(op, K.grid);
  sampler.advance_to(horizon);
  for (std::size_t k = 0; k < sampler.size(); ++k) {
    if (sampler.left_at(k) >= 0) {
      const int j = sampler.left_at(k);
      const Point y = op.symbol(sampler.image(k, j - 1));
      return escape({K.grid.point(k), j, y.norm(), "left_domain"});
    }
  }
  for (int m = 1; m <= horizon; ++m)
    for (std::size_t k = 0; k < sampler.size(); ++k) {
      const Point y = sampler.image(k, m);
      if (!L.grid.covers(y)) return escape({K.grid.point(k), m, y.norm(), "uncovered"});
    }

  for (int m = 1; m <= horizon; ++m) {
    double best = -kInf;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      double lk;
      if (K.kind == SeminormSpec::Kind::Sup || K.order == 0) {
        lk = sampler.log_sup(basis[b], m);
      } else {
        const double v = eval_seminorm(K, apply_iterate(op, basis[b], m));
        lk = v > 0.0 ? std::log(v) : -kInf;
      }
      best = std::max(best, lk - log_norm_L[b]);
    }
    rep.log_values.push_back(best);
    rep.values.push_back(std::exp(best));
  }

  const SequenceFit fit = classify_log_sequence(rep.log_values, options);
  rep.classification = fit.classification;
  rep.rate = fit.slope;
  rep.fit_residual = fit.residual;
  return rep;
}

PowerBoundedReport test_power_bounded_characterization(const WCOperator& op,
                                                       const std::vector<ScalarField>& basis,
                                                       const CompactGrid& K, int horizon,
                                                       const GrowthOptions& options) {
  PowerBoundedReport rep;
  OrbitOptions oo;
  oo.horizon = horizon;
  rep.orbit = check_stable_orbits(op.symbol, K, oo);

  const DomainPtr domain =
      K.domain() ? K.domain() : std::make_shared<const Domain>(Domain::whole(K.dim()));
  const CompactGrid L = rep.orbit.stable
                            ? level_grid(domain, *rep.orbit.enclosing_level, K.spacing())
                            : K;
  rep.growth =
      estimate_growth(op, basis, SeminormSpec::sup(K), SeminormSpec::sup(L), horizon, options);

  // ||C^m(w)||_K = sup_K |cocycle_m * (w o psi^m)|, m = 1..M.
  IterateSampler sampler(op, K);
  sampler.advance_to(horizon);
  bool escaped = false;
  for (std::size_t k = 0; k < sampler.size(); ++k)
    if (sampler.left_at(k) >= 0) escaped = true;
  if (!escaped) {
    for (int m = 1; m <= horizon; ++m) rep.weight_orbit_log_values.push_back(sampler.log_sup(op.weight, m));
    rep.weight_orbit_bounded =
        classify_log_sequence(rep.weight_orbit_log_values, options).classification ==
        GrowthClass::Bounded;
  }

  const bool topologizable = rep.growth.classification == GrowthClass::Bounded ||
                             rep.growth.classification == GrowthClass::Exponential;
  rep.power_bounded = rep.orbit.stable && rep.weight_orbit_bounded;
  rep.topologizable_route = topologizable && rep.weight_orbit_bounded;
  rep.growth_route = rep.growth.classification == GrowthClass::Bounded;
  rep.consistent = rep.power_bounded == rep.topologizable_route &&
                   rep.power_bounded == rep.growth_route;
  return rep;
}

// Mean ergodicity -----------------------------------------------------------

namespace {

ErgodicReport ergodic_impl(const WCOperator& op, const std::vector<ScalarField>& family,
                           const CompactGrid& probe, int n1, int n2, double tol) {
  if (family.empty()) throw EmptyBasis();
  if (n1 < 1 || n2 < n1) throw Error("Cesaro window needs 1 <= n1 <= n2");
  if (!(tol > 0.0)) throw Error("tolerance must be positive");

  ErgodicReport rep;
  rep.n1 = n1;
  rep.n2 = n2;
  rep.tol = tol;
  rep.family_size = family.size();

  double scale = 0.0;
  for (const auto& f : family) scale = std::max(scale, sup_on(probe, f));
  rep.scale = std::max(1.0, scale);

  // Halving checkpoints for the rate fit.
  std::vector<int> checkpoints;
  for (int n = n2 / 2; n >= 1 && checkpoints.size() < 4; n /= 2) checkpoints.push_back(n);
  std::vector<double> halving(checkpoints.size(), 0.0);

  IterateSampler sampler(op, probe);
  sampler.advance_to(n2);

  const std::size_t window = static_cast<std::size_t>(n2 - n1 + 1);
  std::vector<Complex> means(window);
  std::vector<Complex> all(static_cast<std::size_t>(n2) + 1);
  for (std::size_t fi = 0; fi < family.size(); ++fi) {
    for (std::size_t k = 0; k < probe.size(); ++k) {
      Complex sum(0.0);
      for (int m = 1; m <= n2; ++m) {
        sum += sampler.iterate_value(family[fi], k, m);
        all[static_cast<std::size_t>(m)] = sum / static_cast<double>(m);
      }
      for (std::size_t i = 0; i < window; ++i) means[i] = all[static_cast<std::size_t>(n1) + i];
      double diam = 0.0;
      for (std::size_t i = 0; i < window; ++i)
        for (std::size_t j = i + 1; j < window; ++j)
          diam = std::max(diam, std::abs(means[i] - means[j]));
      rep.cauchy_defect = std::max(rep.cauchy_defect, diam);
      for (std::size_t c = 0; c < checkpoints.size(); ++c) {
        const auto n = static_cast<std::size_t>(checkpoints[c]);
        halving[c] = std::max(halving[c], std::abs(all[n] - all[2 * n]));
      }
      if (fi == 0) rep.limit_estimate.push_back(all[static_cast<std::size_t>(n2)]);
    }
  }
  rep.converged = rep.cauchy_defect < tol * rep.scale;

  // Rate p from |T_[n] - T_[2n]| ~ n^-p, only when the differences decrease.
  std::vector<double> xs, ys;
  bool decreasing = checkpoints.size() >= 2;
  for (std::size_t c = 0; c < checkpoints.size(); ++c) {
    if (!(halving[c] > 0.0)) decreasing = false;
    if (c > 0 && !(halving[c - 1] < halving[c])) decreasing = false;
    xs.push_back(std::log(static_cast<double>(checkpoints[c])));
    ys.push_back(halving[c] > 0.0 ? std::log(halving[c]) : 0.0);
  }
  if (decreasing) rep.rate_estimate = -fit_poly(xs, ys, 1).slope;
  return rep;
}

}  // namespace

ErgodicReport test_mean_ergodic(const WCOperator& op, const ScalarField& f,
                                const CompactGrid& probe, int n1, int n2, double tol) {
  return ergodic_impl(op, {f}, probe, n1, n2, tol);
}

ErgodicReport test_uniform_mean_ergodic(const WCOperator& op,
                                        const std::vector<ScalarField>& family,
                                        const CompactGrid& probe, int n1, int n2, double tol) {
  return ergodic_impl(op, family, probe, n1, n2, tol);
}

// Denseness -----------------------------------------------------------------

DensenessReport check_denseness_hypothesis(const ScalarField& w, const SelfMap& psi,
                                           const CompactGrid& samples, int m_max,
                                           double density_floor) {
  if (samples.empty()) throw Error("denseness check needs samples");
  DensenessReport rep;
  rep.density_floor = density_floor;
  std::vector<Point> ys;
  for (std::size_t k = 0; k < samples.size(); ++k) ys.push_back(samples.point(k));
  const Domain* X = samples.domain().get();

  std::vector<double> mags(ys.size());
  for (int m = 0; m <= m_max; ++m) {
    if (m > 0)
      for (auto& y : ys) {
        y = psi(y);
        if (!y.allFinite() || (X && !X->contains(y))) throw LeftDomain(y, m);
      }
    double top = 0.0;
    for (std::size_t k = 0; k < ys.size(); ++k) {
      mags[k] = std::abs(w(ys[k]));
      top = std::max(top, mags[k]);
    }
    const double zero_tol = 1e-12 * (1.0 + top);
    std::size_t nonzero = 0;
    for (double a : mags)
      if (a > zero_tol) ++nonzero;
    const double frac = static_cast<double>(nonzero) / static_cast<double>(ys.size());
    rep.density.push_back(frac);
    if (frac < density_floor) rep.flagged.push_back(m);
  }
  rep.dense = rep.flagged.empty();
  return rep;
}

}  // namespace wco
