#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "wco/dynamics.hpp"
#include "wco/pdekernel.hpp"
#include "wco/scenarios.hpp"
#include "wco/semigroup.hpp"
#include "wco/smoothcalc.hpp"

using namespace wco;
using namespace wco::testing;

namespace {

CompactGrid subsample(const CompactGrid& g, std::size_t count) {
  if (g.size() <= count) return g;
  std::vector<Point> pts;
  for (std::size_t i = 0; i < count; ++i) pts.push_back(g.point(i * g.size() / count));
  return point_grid(g.domain(), pts);
}

double sup_diff(const ScalarField& a, const ScalarField& b, const CompactGrid& g) {
  double d = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) d = std::max(d, std::abs(a(g.point(k)) - b(g.point(k))));
  return d;
}

// Catalog scenarios whose series can be certified.
std::vector<const Scenario*> certifiable() {
  std::vector<const Scenario*> out;
  for (const auto& s : builtin_catalog()) {
    if (!s.space.sup_type()) continue;
    if (check_stable_orbits(s.symbol, s.K).stable) out.push_back(&s);
  }
  return out;
}

}  // namespace

TEST_SUITE("funcspace") {
  TEST_CASE("exhaustions are nested") {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    const std::vector<DomainPtr> domains = {plane(), unit_disk(),
                                            std::make_shared<const Domain>(Domain::half_space(2, 1, 0.0))};
    for (const auto& X : domains)
      for (int trial = 0; trial < 2000; ++trial) {
        const Point x = pt(u(rng), u(rng));
        for (int n = 1; n < 8; ++n)
          if (Exhaustion{X, n}.contains(x)) CHECK(Exhaustion{X, n + 1}.contains(x));
      }
  }

  TEST_CASE("seminorm axioms on random fields") {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const CompactGrid g = box_grid(plane(), pt(-1, -1), pt(1, 1), 0.25);
    const std::vector<std::string> pool = {"x^2*y", "exp(x) - y", "sin(x*y)", "x^3 + 2*y^2", "cos(x) + x*y"};
    for (int trial = 0; trial < 20; ++trial) {
      const ScalarField f = zf(pool[rng() % pool.size()]);
      const ScalarField h = zf(pool[rng() % pool.size()]);
      const Complex c(u(rng), u(rng));
      for (int l = 0; l <= 2; ++l) {
        for (bool exact : {true, false}) {
          const ScalarField a = exact ? f : f.without_oracle();
          const ScalarField b = exact ? h : h.without_oracle();
          const SeminormSpec spec = l == 0 ? SeminormSpec::sup(g) : SeminormSpec::cr(g, l);
          const double tol = exact ? 1e-12 : 1e-8;
          CHECK(eval_seminorm(spec, a + b) <= eval_seminorm(spec, a) + eval_seminorm(spec, b) + 1e-6);
          const double lhs = eval_seminorm(spec, c * a);
          const double rhs = std::abs(c) * eval_seminorm(spec, a);
          CHECK(std::abs(lhs - rhs) <= tol * std::max(1.0, rhs));
        }
      }
    }
  }

  TEST_CASE("refining a grid never lowers the sup") {
    const ScalarField f = zf("sin(3*x)*cos(2*y) + x*y");
    for (double h : {0.5, 0.25, 0.125}) {
      const CompactGrid coarse = box_grid(plane(), pt(-1, -1), pt(1, 1), h);
      const CompactGrid fine = box_grid(plane(), pt(-1, -1), pt(1, 1), h / 2);
      CHECK(eval_seminorm(SeminormSpec::sup(fine), f) >= eval_seminorm(SeminormSpec::sup(coarse), f));
    }
  }

  TEST_CASE("central differences of cubics carry the h^2 term exactly") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      const double a = u(rng), b = u(rng), x = u(rng);
      const ScalarField p = ScalarField::parse(format_double(a) + "*x^3 + " + format_double(b) + "*x^2", {"x"});
      const double h = fd_step(1, pt(x));
      // the stencil samples x +- h/2: (p(x+h/2) - p(x-h/2)) / h = p'(x) + a h^2 / 4
      const Complex fd = finite_difference(p.without_oracle(), {1}, pt(x), nullptr);
      CHECK(std::abs(fd - (*p.derivative({1}, pt(x)) + a * h * h / 4)) < 1e-10);
      // second differences of quadratics are exact up to rounding
      const Complex fd2 = finite_difference(p.without_oracle(), {2}, pt(x), nullptr);
      CHECK(std::abs(fd2 - *p.derivative({2}, pt(x))) < 1e-5);
    }
  }
}

TEST_SUITE("wcomp") {
  TEST_CASE("iterate composition, cocycle multiplicativity and linearity") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    const std::vector<WCOperator> ops = {complex_op("1 + z/3", "z^2/2 + 0.1", plane()),
                                         complex_op("exp(z/4)", "0.9*z", plane()),
                                         complex_op("z - 2", "-z", plane())};
    const ScalarField f = zf("z^2 + 1"), g = zf("exp(z)");
    for (const auto& op : ops)
      for (int trial = 0; trial < 20; ++trial) {
        const Point x = pt(u(rng), u(rng));
        const int m = static_cast<int>(rng() % 6), k = static_cast<int>(rng() % 6);
        CHECK(close(apply_iterate(op, apply_iterate(op, f, k), m)(x), apply_iterate(op, f, m + k)(x), 1e-12));
        Point y = x;
        for (int j = 0; j < m; ++j) y = op.symbol(y);
        CHECK(close(cocycle(op, x, m + k), cocycle(op, x, m) * cocycle(op, y, k), 1e-12));
        const Complex a(u(rng), u(rng)), b(u(rng), u(rng));
        const Complex lhs = apply_iterate(op, a * f + b * g, m)(x);
        const Complex rhs = a * apply_iterate(op, f, m)(x) + b * apply_iterate(op, g, m)(x);
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
      }
  }

  TEST_CASE("Cesaro recombination") {
    const WCOperator op = complex_op("z/2 + 1", "0.8*z", unit_disk());
    const ScalarField f = zf("z^2 - z");
    const Point x = pt(0.3, -0.4);
    for (int n = 2; n <= 30; ++n) {
      const Complex lhs = apply_iterate(op, f, n)(x) / double(n);
      const Complex rhs = cesaro_mean(op, f, n)(x) - (double(n - 1) / n) * cesaro_mean(op, f, n - 1)(x);
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_SUITE("dynamics") {
  TEST_CASE("three power-boundedness routes agree on the catalog") {
    for (const auto& s : builtin_catalog()) {
      if (!s.space.sup_type() || !s.assumption_flags.all()) continue;
      const PowerBoundedReport r = test_power_bounded_characterization(s.op(), s.test_fields, s.K, 200);
      CHECK_MESSAGE(r.consistent, s.name);
      CHECK_MESSAGE(r.power_bounded == r.topologizable_route, s.name);
      CHECK_MESSAGE(r.power_bounded == r.growth_route, s.name);
    }
  }

  TEST_CASE("unweighted catalog scenarios: stable orbits give mean ergodicity") {
    for (const auto& s : builtin_catalog()) {
      if (!s.space.sup_type() || s.source.at("weight") != "1") continue;
      const OrbitReport orbit = check_stable_orbits(s.symbol, s.K);
      const CompactGrid probe = subsample(s.K, 12);
      if (orbit.stable) {
        for (const auto& f : s.test_fields)
          CHECK_MESSAGE(test_mean_ergodic(s.op(), f, probe, 500, 1000, 2e-2).converged, s.name);
      } else if (orbit.monotone_escape) {
        const PowerBoundedReport r = test_power_bounded_characterization(s.op(), s.test_fields, s.K, 200);
        CHECK_MESSAGE(r.growth.classification != GrowthClass::Bounded, s.name);
      }
    }
  }

  TEST_CASE("verdicts are unchanged by scaling the input") {
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> big(1.0, 50.0), any(0.01, 50.0);
    const CompactGrid K = ball_grid(unit_disk(), pt(0, 0), 0.75, 0.25);
    const auto norm = SeminormSpec::sup(K);
    const std::vector<WCOperator> ops = {complex_op("1", "z/2", unit_disk()), complex_op("2", "z", unit_disk()),
                                         complex_op("1", "-z", unit_disk())};
    for (const auto& op : ops)
      for (int trial = 0; trial < 5; ++trial) {
        const ScalarField f = zf("z + 1");
        const Complex c = any(rng);
        CHECK(estimate_growth(op, {f}, norm, norm, 40).classification ==
              estimate_growth(op, {c * f}, norm, norm, 40).classification);
        // tolerance is absolute below unit scale, so scaling is checked upward
        const Complex up = big(rng);
        CHECK(test_mean_ergodic(op, f, K, 100, 200, 1e-2).converged ==
              test_mean_ergodic(op, up * f, K, 100, 200, 1e-2).converged);
      }
  }
}

TEST_SUITE("smoothcalc") {
  TEST_CASE("every term conserves the multi-index") {
    for (int d = 1; d <= 3; ++d)
      for (const auto& alpha : indices_up_to(d, 4)) {
        if (order(alpha) == 0) continue;
        for (bool merge : {false, true}) {
          const ExpansionTable t = build_expansion(alpha, d, merge);
          for (const auto& term : t.terms) {
            CHECK(static_cast<int>(term.factors.size()) == order(term.beta));
            MultiIndex sum(static_cast<std::size_t>(d), 0);
            for (const auto& f : term.factors) sum = sum + f.gamma;
            CHECK(sum == alpha);
          }
        }
      }
  }

  TEST_CASE("table size is bounded by B times the number of beta") {
    for (int d = 1; d <= 3; ++d)
      for (int s = 1; s <= 4; ++s)
        for (const auto& alpha : indices_of_order(d, s)) {
          const ExpansionTable t = build_expansion(alpha, d, false);
          const double betas = static_cast<double>(indices_up_to(d, s).size());
          CHECK(static_cast<double>(t.total_terms()) <= t.B_constant * betas);
        }
  }
}

TEST_SUITE("pdekernel") {
  TEST_CASE("exponential derivatives are zeta^alpha e_zeta") {
    const Complex i(0.0, 1.0);
    const ExponentialSolution e = make_exponential_solution(DiffOperator::heat(1), {i, std::sqrt(i)});
    const Point x = pt(0.4, -0.3);
    const Complex base = e.field(x);
    for (const auto& a : indices_up_to(2, 4)) {
      const Complex expected = std::pow(e.zeta[0], a[0]) * std::pow(e.zeta[1], a[1]) * base;
      CHECK(std::abs(*e.field.derivative(a, x) - expected) < 1e-14);
    }
  }

  TEST_CASE("accepted heat pairs map solutions into the kernel, rejected ones do not") {
    for (const auto& s : builtin_catalog()) {
      const auto P = s.space.kernel_operator();
      if (!P || P->name != "heat") continue;
      const double tol = 1e-6;
      const InvarianceVerdict v = verify_heat_invariance(s.weight, s.symbol, s.K, tol);
      std::vector<Point> interior;
      for (std::size_t k = 0; k < s.K.size(); ++k)
        if (s.K.point(k).cwiseAbs().maxCoeff() < 0.9) interior.push_back(s.K.point(k));
      const CompactGrid probe = point_grid(s.K.domain(), interior);
      const ClosureReport c = closure_sampling_check(s.op(), heat_solutions(1), probe, 10 * tol);
      if (v.overall) CHECK_MESSAGE(c.pass, s.name);
      else CHECK_MESSAGE(c.residual > 100 * tol, s.name);
    }
  }

  TEST_CASE("invariance residuals do not decrease under refinement") {
    const auto psi = SelfMap::parse({"x", "t"}, {"t", "x"});
    const ScalarField w = ScalarField::parse("1 + t*x/4", {"t", "x"});
    for (double h : {0.5, 0.25}) {
      const CompactGrid coarse = box_grid(plane(), pt(-1, -1), pt(1, 1), h);
      const CompactGrid fine = box_grid(plane(), pt(-1, -1), pt(1, 1), h / 2);
      const InvarianceVerdict a = verify_heat_invariance(w, psi, coarse, 1e-6);
      const InvarianceVerdict b = verify_heat_invariance(w, psi, fine, 1e-6);
      for (const auto& [k, c] : a.conditions) CHECK(b.conditions.at(k).residual >= c.residual);
    }
  }
}

TEST_SUITE("semigroup") {
  TEST_CASE("truncation certificate holds empirically") {
    for (const Scenario* s : certifiable()) {
      const CompactGrid probe = subsample(s->K, 16);
      const double eps = 1e-9;
      for (const auto& f : s->test_fields) {
        const auto [a, ba] = exp_apply(s->op(), f, 1.0, eps, SeminormSpec::sup(probe));
        const auto [b, bb] = exp_apply(s->op(), f, 1.0, eps * 1e-4, SeminormSpec::sup(probe));
        CHECK(bb.N >= ba.N);
        CHECK_MESSAGE(sup_diff(a, b, probe) < eps, s->name);
      }
    }
  }

  TEST_CASE("semigroup law on the catalog") {
    for (const Scenario* s : certifiable()) {
      const CompactGrid probe = subsample(s->K, 8);
      for (double t : {0.0, 0.2, 0.3, 1.0})
        for (double u : {0.0, 0.2, 0.3, 1.0}) {
          const SemigroupLawReport r = check_semigroup_law(s->op(), s->test_fields.front(), t, u, probe, 1e-8);
          CHECK_MESSAGE(r.defect < 10 * r.eps, s->name);
        }
    }
  }

  TEST_CASE("generator defects are first order on the catalog") {
    for (const Scenario* s : certifiable()) {
      const CompactGrid probe = subsample(s->K, 8);
      for (const auto& f : s->test_fields) {
        const GeneratorReport r = check_generator(s->op(), f, probe, default_h_sequence(), 1e-3);
        if (r.defects.front() == 0.0) continue;  // C f = 0 makes the quotient exact
        CHECK_MESSAGE(r.ratio_in_band, (s->name + " " + f.label()));
      }
    }
  }
}

TEST_SUITE("scenarios") {
  TEST_CASE("reports are deterministic") {
    for (const char* name : {"contraction-on-disk", "heat-parabolic-rescaling", "smooth-rotation"}) {
      const Scenario& s = resolve_scenario(name);
      CHECK(report_json(run_scenario(s)).dump() == report_json(run_scenario(s)).dump());
    }
  }
}
