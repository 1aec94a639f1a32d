#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "wco/semigroup.hpp"

using namespace wco;
using namespace wco::testing;

namespace {

long double brute_tail(double x, int N) {
  long double term = 1.0L, sum = 0.0L;
  for (int k = 1; k <= N + 400; ++k) {
    term *= static_cast<long double>(x) / k;
    if (k > N) sum += term;
  }
  return sum;
}

const CompactGrid& disk_K() {
  static const CompactGrid K = ball_grid(unit_disk(), pt(0, 0), 0.75, 0.25);
  return K;
}

}  // namespace

TEST_SUITE("semigroup") {
  TEST_CASE("tail bound dominates the exact tail") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ux(0.01, 20.0);
    for (int trial = 0; trial < 200; ++trial) {
      const double x = ux(rng);
      const int N = static_cast<int>(std::ceil(2 * x)) + static_cast<int>(rng() % 20);
      const long double exact = brute_tail(x, N);
      const double bound = exp_tail_bound(x, N);
      CHECK(bound >= static_cast<double>(exact));
      CHECK(bound <= 2.0 * static_cast<double>(exact) + 1e-300);
    }
    CHECK(exp_tail_bound(0.0, 3) == 0.0);
    CHECK(std::isinf(exp_tail_bound(5.0, 2)));
  }

  TEST_CASE("truncation order is the least admissible one") {
    for (double x : {0.1, 1.0, 3.3, 12.0})
      for (double eps : {1e-6, 1e-12}) {
        const int N = truncation_order(x, 2.0, eps);
        CHECK(2.0 * exp_tail_bound(x, N) < eps);
        if (N > 0) CHECK(2.0 * exp_tail_bound(x, N - 1) >= eps);
      }
    CHECK(truncation_order(0.0, 1.0, 1e-9) == 0);
  }

  TEST_CASE("series coefficients") {
    for (double t : {0.7, 60.0}) {
      const auto c = series_coefficients(t, 40);
      for (int k = 0; k <= 40; ++k) {
        const double direct = std::exp(k * std::log(t) - std::lgamma(k + 1.0));
        CHECK(c[static_cast<std::size_t>(k)] == doctest::Approx(direct).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("closed-form evolutions") {
    const CompactGrid K = ball_grid(plane(), pt(0, 0), 1.0, 0.25);
    const auto [e1, b1] = exp_apply(complex_op("1", "z", plane()), zf("1"), 1.0, 1e-9, SeminormSpec::sup(K));
    CHECK(std::abs(e1(pt(0.3, 0.2)) - std::exp(1.0)) < 1e-9);
    CHECK(b1.tail_bound < 1e-9);

    const auto [e2, b2] = exp_apply(complex_op("z", "z", unit_disk()), zf("1"), 1.0, 1e-9, SeminormSpec::sup(disk_K()));
    CHECK(std::abs(e2(pt(0.5, 0)) - std::exp(0.5)) < 1e-9);
    CHECK(b2.gamma == doctest::Approx(1.1 * 0.75));

    const auto [e3, b3] = exp_apply(complex_op("1", "z/2", plane()), zf("z"), 2.0, 1e-9, SeminormSpec::sup(K));
    CHECK(std::abs(e3(pt(1, 0)) - std::exp(1.0)) < 1e-9);

    const auto [e4, b4] = exp_apply(complex_op("1", "-z", plane()), zf("z"), 2.0, 1e-9, SeminormSpec::sup(K));
    CHECK(std::abs(e4(pt(1, 0)) - std::exp(-2.0)) < 1e-9);
  }

  TEST_CASE("t = 0 returns the input") {
    const ScalarField f = zf("z^2 + 3");
    const auto [g, b] = exp_apply(complex_op("z", "z/2", unit_disk()), f, 0.0, 1e-9, SeminormSpec::sup(disk_K()));
    CHECK(g(pt(0.1, 0.2)) == f(pt(0.1, 0.2)));
    CHECK(b.N == 0);
  }

  TEST_CASE("semigroup law") {
    const CompactGrid half = point_grid(unit_disk(), {pt(0.5, 0)});
    const WCOperator mono = complex_op("z", "z", unit_disk());
    CHECK(check_semigroup_law(mono, zf("1"), 0.3, 0.2, half, 1e-8).defect < 1e-8);
    CHECK(check_semigroup_law(mono, zf("1"), 0.0, 0.4, half, 1e-8).defect < 1e-9);
    const CompactGrid one = point_grid(plane(), {pt(1, 0), pt(0, 0.5)});
    CHECK(check_semigroup_law(complex_op("1", "-z", plane()), zf("z"), 1.0, 1.0, one, 1e-8).pass);
  }

  TEST_CASE("generator difference quotients") {
    const CompactGrid half = point_grid(unit_disk(), {pt(0.5, 0)});
    const GeneratorReport id = check_generator(complex_op("1", "z", plane()), zf("1"), half, default_h_sequence(), 1e-3);
    CHECK(id.decreasing);
    CHECK(id.ratio_in_band);
    const GeneratorReport mono = check_generator(complex_op("z", "z", unit_disk()), zf("1"), half, default_h_sequence(), 1e-3);
    CHECK(mono.pass);
    CHECK(mono.scale == doctest::Approx(0.5));
    const CompactGrid one = point_grid(plane(), {pt(1, 0)});
    const GeneratorReport two = check_generator(complex_op("2", "z", plane()), zf("z"), one, default_h_sequence(), 1e-3);
    CHECK(two.pass);
    CHECK(two.scale == doctest::Approx(2.0));
  }

  TEST_CASE("refusals") {
    const CompactGrid D = ball_grid(plane(), pt(0, 0), 1.0, 0.25);
    CHECK_THROWS_AS(exp_apply(complex_op("1", "2*z", plane()), zf("1"), 1.0, 1e-9, SeminormSpec::sup(D)), NoGrowthBound);
    const CompactGrid tiny = ball_grid(plane(), pt(0, 0), 0.5, 0.25);
    CHECK_THROWS_AS(exp_apply(complex_op("1", "z + 0.1", plane()), zf("1"), 1.0, 1e-9, SeminormSpec::sup(tiny),
                              SeminormSpec::sup(tiny), 10),
                    NoGrowthBound);
    CHECK_THROWS_AS(exp_apply(complex_op("1", "z", plane()), zf("1"), 1.0, 1e-9, SeminormSpec::cr(D, 1)), Error);
  }
}
