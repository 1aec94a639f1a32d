#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "support.hpp"
#include "wco/funcspace.hpp"
#include "wco/wcomp.hpp"

using namespace wco;
using namespace wco::testing;

TEST_SUITE("funcspace") {
  TEST_CASE("exhaustion of the plane is a ball") {
    const auto [ex, grid] = build_exhaustion(plane(), 3, 0.25);
    double rmax = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) rmax = std::max(rmax, grid.point(k).norm());
    CHECK(rmax == doctest::Approx(3.0));
    CHECK(ex.contains(pt(2.9, 0.0)));
    CHECK_FALSE(ex.contains(pt(3.0, 0.1)));
  }

  TEST_CASE("exhaustion of the unit disk at level 2 is the disk of radius 1/2") {
    const auto [ex, grid] = build_exhaustion(unit_disk(), 2, 0.05);
    for (std::size_t k = 0; k < grid.size(); ++k) CHECK(grid.point(k).norm() <= 0.5 + 1e-9);
    // brute-force scan of the analytic description
    for (double x = -1.0; x <= 1.0; x += 0.01)
      for (double y = -1.0; y <= 1.0; y += 0.01) {
        const double r = std::hypot(x, y);
        if (std::abs(r - 0.5) < 1e-6) continue;
        CHECK(ex.contains(pt(x, y)) == (r < 0.5));
      }
  }

  TEST_CASE("exhaustion of a half-plane") {
    const auto X = std::make_shared<const Domain>(Domain::half_space(2, 1, 0.0));
    const Exhaustion ex{X, 3};
    for (double x = -3.5; x <= 3.5; x += 0.05)
      for (double y = -3.5; y <= 3.5; y += 0.05) {
        const bool expected = std::hypot(x, y) < 3.0 && y > 1.0 / 3.0;
        if (std::abs(std::hypot(x, y) - 3.0) < 1e-6 || std::abs(y - 1.0 / 3.0) < 1e-6) continue;
        CHECK(ex.contains(pt(x, y)) == expected);
      }
  }

  TEST_CASE("required level") {
    CHECK(required_level(*plane(), pt(2.5, 0.0)) == 3.0);
    CHECK(required_level(*unit_disk(), pt(0.0, 0.0)) == 1.0);
    CHECK(required_level(*unit_disk(), pt(0.75, 0.0)) == 4.0);
    CHECK(std::isinf(required_level(*unit_disk(), pt(1.0, 0.0))));
  }

  TEST_CASE("sup and C^r seminorms") {
    const auto X = line();
    const CompactGrid sym = box_grid(X, pt(-1.0), pt(1.0), 0.1);
    CHECK(eval_seminorm(SeminormSpec::sup(sym), ScalarField::parse("0", {"x"})) == 0.0);
    CHECK(eval_seminorm(SeminormSpec::sup(sym), ScalarField::parse("x", {"x"})) == doctest::Approx(1.0));
    const CompactGrid pos = box_grid(X, pt(0.0), pt(2.0), 0.1);
    const ScalarField sq = ScalarField::parse("x^2", {"x"});
    CHECK(eval_seminorm(SeminormSpec::cr(pos, 2), sq) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(eval_seminorm(SeminormSpec::cr(pos, 2), sq.without_oracle()) == doctest::Approx(4.0).epsilon(1e-6));
  }

  TEST_CASE("finite differences agree with oracles") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    const ScalarField f = ScalarField::parse("exp(x)*sin(y) + x^3*y", {"x", "y"});
    const ScalarField g = f.without_oracle();
    for (int trial = 0; trial < 10; ++trial) {
      const Point x = pt(u(rng), u(rng));
      for (const auto& a : indices_up_to(2, 3)) {
        const Complex exact = *f.derivative(a, x);
        CHECK(std::abs(partial(g, a, x, nullptr) - exact) < 1e-5 * (1 + std::abs(exact)));
      }
    }
  }

  TEST_CASE("stencils leaving the domain are refused") {
    const ScalarField g = zf("z").without_oracle();
    CHECK_THROWS_AS(finite_difference(g, {1, 0}, pt(1.0 - 1e-7, 0.0), unit_disk().get()), StencilOutsideDomain);
  }

  TEST_CASE("map_grid") {
    const CompactGrid c = circle_grid(plane(), pt(0, 0), 1.0, 16);
    const CompactGrid same = map_grid(c, SelfMap::identity(2), 4);
    CHECK((same.points() - c.points()).norm() == 0.0);
    const CompactGrid small = map_grid(c, SelfMap::parse_complex("z/2"), 3);
    for (std::size_t k = 0; k < small.size(); ++k) CHECK(small.point(k).norm() == doctest::Approx(0.125));
    const CompactGrid origin = point_grid(unit_disk(), {pt(0, 0)});
    CHECK_THROWS_AS(map_grid(origin, SelfMap::parse_complex("z+1"), 1), LeftDomain);
  }

  TEST_CASE("format_double round-trips") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 100; ++i) {
      const double v = u(rng) / 7.0;
      CHECK(std::stod(format_double(v)) == v);
    }
  }

  TEST_CASE("grid CSV has one row per point") {
    const CompactGrid g = box_grid(plane(), pt(0, 0), pt(1, 1), 0.5);
    std::ostringstream os;
    write_grid_csv(os, g);
    const std::string s = os.str();
    CHECK(static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')) >= g.size());
  }
}

TEST_SUITE("wcomp") {
  TEST_CASE("cocycle values") {
    const WCOperator a = complex_op("z", "z/2", plane());
    CHECK(std::abs(cocycle(a, pt(1, 0), 0) - 1.0) == 0.0);
    CHECK(std::abs(cocycle(a, pt(1, 0), 3) - 0.125) < 1e-15);
    const WCOperator b = complex_op("2", "z+1", plane());
    CHECK(std::abs(cocycle(b, pt(0, 0), 2) - 4.0) < 1e-15);
  }

  TEST_CASE("iterates") {
    const ScalarField f = zf("exp(z) + z^2");
    const WCOperator id = complex_op("1", "z", plane());
    for (double x : {-0.5, 0.0, 0.7})
      CHECK(std::abs(apply_iterate(id, f, 5)(pt(x, 0.2)) - f(pt(x, 0.2))) < 1e-15);
    const WCOperator mono = complex_op("z", "z", plane());
    CHECK(apply_iterate(mono, zf("1"), 4)(pt(0.5, 0)).real() == doctest::Approx(0.0625));
    const WCOperator shift = complex_op("2", "z+1", plane());
    CHECK(apply_iterate(shift, zf("z"), 2)(pt(0, 0)).real() == doctest::Approx(8.0));
  }

  TEST_CASE("iterates leaving the domain raise LeftDomain") {
    const WCOperator op = complex_op("1", "z+1", unit_disk());
    CHECK_THROWS_AS(apply_iterate(op, zf("z"), 1)(pt(0, 0)), LeftDomain);
  }

  TEST_CASE("cocycle log keeps the exponent past overflow") {
    const WCOperator op = complex_op("2", "z", plane());
    const CocycleValue c = cocycle_log(op, pt(0.3, 0.1), 2000);
    CHECK(c.log_abs == doctest::Approx(2000 * std::log(2.0)));
    CHECK(std::abs(c.phase - 1.0) < 1e-12);
  }

  TEST_CASE("Cesaro means") {
    const WCOperator id = complex_op("1", "z", plane());
    const ScalarField f = zf("z^3 - 1");
    for (int n : {1, 2, 7}) CHECK(std::abs(cesaro_mean(id, f, n)(pt(0.4, 0.3)) - f(pt(0.4, 0.3))) < 1e-14);
    CHECK(std::abs(cesaro_mean(id, zf("0"), 5)(pt(0.4, 0.3))) == 0.0);
    const WCOperator half = complex_op("1", "z/2", unit_disk());
    CHECK(cesaro_mean(half, zf("z"), 4)(pt(0.5, 0)).real() == doctest::Approx(15.0 / 128.0).epsilon(1e-14));
  }

  TEST_CASE("iterate jets match finite differences of the iterate") {
    const WCOperator op = line_op("exp(-x0)", "x0/2 + x0^2/8");
    const ScalarField Cf = apply_iterate(op, ScalarField::parse("sin(x0)", {"x0"}), 3);
    REQUIRE(Cf.has_oracle());
    const ScalarField g = Cf.without_oracle();
    for (double x : {-0.6, 0.1, 0.9})
      for (int k = 0; k <= 3; ++k) {
        const Complex exact = *Cf.derivative({k}, pt(x));
        CHECK(std::abs(partial(g, {k}, pt(x), nullptr) - exact) < 1e-5 * (1 + std::abs(exact)));
      }
  }

  TEST_CASE("IterateSampler agrees with apply_iterate") {
    const WCOperator op = complex_op("1 + z/3", "z^2/2 + 0.1", plane());
    const CompactGrid g = ball_grid(plane(), pt(0, 0), 0.8, 0.2);
    IterateSampler s(op, g);
    s.advance_to(6);
    const ScalarField f = zf("z + 2");
    for (std::size_t k = 0; k < g.size(); ++k)
      for (int m = 0; m <= 6; ++m)
        CHECK(close(s.iterate_value(f, k, m), apply_iterate(op, f, m)(g.point(k)), 1e-13));
  }
}
