#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "wco/expr.hpp"
#include "wco/field.hpp"
#include "wco/jet.hpp"

using namespace wco;
using namespace wco::testing;

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

TEST_SUITE("jet") {
  TEST_CASE("index enumeration sizes are binomial") {
    for (int d = 1; d <= 3; ++d)
      for (int L = 0; L <= 5; ++L) {
        CHECK(indices_up_to(d, L).size() == static_cast<std::size_t>(binomial(d + L, L)));
        CHECK(indices_of_order(d, L).size() == static_cast<std::size_t>(binomial(d + L - 1, L)));
      }
  }

  TEST_CASE("polynomial derivatives") {
    // f = x^3 y at (2, 3)
    const auto v = seed_jets(pt(2.0, 3.0), 4);
    const Jet f = pow(v[0], 3) * v[1];
    CHECK(f.value().real() == doctest::Approx(24.0));
    CHECK(f.derivative({1, 0}).real() == doctest::Approx(36.0));
    CHECK(f.derivative({0, 1}).real() == doctest::Approx(8.0));
    CHECK(f.derivative({2, 1}).real() == doctest::Approx(12.0));
    CHECK(f.derivative({3, 1}).real() == doctest::Approx(6.0));
    CHECK(f.derivative({4, 0}).real() == doctest::Approx(0.0));
  }

  TEST_CASE("transcendental derivatives match closed forms") {
    // d^(a,b) e^x sin y = e^x sin^(b)(y)
    const double x = 0.3, y = 0.7;
    const auto v = seed_jets(pt(x, y), 6);
    const Jet f = exp(v[0]) * sin(v[1]);
    const double sin_cycle[4] = {std::sin(y), std::cos(y), -std::sin(y), -std::cos(y)};
    for (const auto& a : indices_up_to(2, 6)) {
      const double expected = std::exp(x) * sin_cycle[a[1] % 4];
      CHECK(std::abs(f.derivative(a) - Complex(expected)) < 1e-12 * (1 + std::abs(expected)));
    }
  }

  TEST_CASE("reciprocal, log and fractional powers") {
    const auto v = seed_jets(pt(0.5), 5);
    const Jet r = reciprocal(v[0] + Complex(1.0));
    const Jet l = log(v[0] + Complex(1.0));
    const Jet s = pow(v[0], Complex(0.5));
    double fact = 1.0;
    for (int k = 0; k <= 5; ++k) {
      if (k > 0) fact *= k;
      const double rk = (k % 2 ? -1.0 : 1.0) * fact / std::pow(1.5, k + 1);
      CHECK(std::abs(r.derivative({k}) - rk) < 1e-12 * (1 + std::abs(rk)));
      if (k >= 1) {
        const double lk = (k % 2 ? 1.0 : -1.0) * (fact / k) / std::pow(1.5, k);
        CHECK(std::abs(l.derivative({k}) - lk) < 1e-12 * (1 + std::abs(lk)));
      }
    }
    // d/dx sqrt(x) = 1/(2 sqrt x), d2 = -1/(4 x^{3/2})
    CHECK(s.derivative({1}).real() == doctest::Approx(0.5 / std::sqrt(0.5)));
    CHECK(s.derivative({2}).real() == doctest::Approx(-0.25 / std::pow(0.5, 1.5)));
  }

  TEST_CASE("product rule property on random polynomials") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const auto v = seed_jets(pt(u(rng), u(rng)), 4);
      const Jet a = v[0] * Complex(u(rng)) + v[1] * v[1] * Complex(u(rng));
      const Jet b = v[1] * Complex(u(rng)) + v[0] * v[0] * v[1];
      const Jet ab = a * b;
      // Leibniz for d_0: (ab)' = a' b + a b'
      const Complex lhs = ab.derivative({1, 0});
      const Complex rhs = a.derivative({1, 0}) * b.value() + a.value() * b.derivative({1, 0});
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_SUITE("expr") {
  TEST_CASE("precedence and constants") {
    const std::vector<std::string> vars = {"x"};
    CHECK(ScalarField::parse("-x^2", vars)(pt(3.0)).real() == doctest::Approx(-9.0));
    CHECK(ScalarField::parse("2*x + 1", vars)(pt(3.0)).real() == doctest::Approx(7.0));
    CHECK(ScalarField::parse("x/2/2", vars)(pt(8.0)).real() == doctest::Approx(2.0));
    CHECK(ScalarField::parse("pi", vars)(pt(0.0)).real() == doctest::Approx(M_PI));
    CHECK(ScalarField::parse("e", vars)(pt(0.0)).real() == doctest::Approx(std::exp(1.0)));
    CHECK(ScalarField::parse("i*i", vars)(pt(0.0)).real() == doctest::Approx(-1.0));
  }

  TEST_CASE("complex variable z") {
    const Complex z(0.3, -0.4);
    const Point p = pt(z.real(), z.imag());
    CHECK(std::abs(zf("z^2")(p) - z * z) < 1e-15);
    CHECK(std::abs(zf("conj(z)")(p) - std::conj(z)) < 1e-15);
    CHECK(std::abs(zf("re(z)")(p) - Complex(z.real())) < 1e-15);
    CHECK(std::abs(zf("im(z)")(p) - Complex(z.imag())) < 1e-15);
    CHECK(std::abs(zf("exp(z)")(p) - std::exp(z)) < 1e-15);
  }

  TEST_CASE("holomorphic fields satisfy Cauchy-Riemann through jets") {
    const ScalarField f = zf("exp(z)*z^3");
    const Point p = pt(0.2, 0.9);
    const Complex dx = *f.derivative({1, 0}, p);
    const Complex dy = *f.derivative({0, 1}, p);
    CHECK(std::abs(dx + Complex(0, 1) * dy) < 1e-13);
  }

  TEST_CASE("malformed input raises ParseError") {
    const std::vector<std::string> vars = {"x"};
    CHECK_THROWS_AS(ScalarField::parse("x +", vars), ParseError);
    CHECK_THROWS_AS(ScalarField::parse("foo(x)", vars), ParseError);
    CHECK_THROWS_AS(ScalarField::parse("y", vars), ParseError);
    CHECK_THROWS_AS(ScalarField::parse("(x", vars), ParseError);
  }
}
