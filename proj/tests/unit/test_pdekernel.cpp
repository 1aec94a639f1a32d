#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wco/pdekernel.hpp"

using namespace wco;
using namespace wco::testing;

namespace {

const std::vector<std::string> kTX = {"t", "x"};

ScalarField tx(const std::string& text) { return ScalarField::parse(text, kTX); }

SpaceInstance heat_space() {
  SpaceInstance s = space(SpaceInstance::Tag::PdeKernel, plane());
  s.op = DiffOperator::heat(1);
  return s;
}

}  // namespace

TEST_SUITE("pdekernel") {
  TEST_CASE("operator application") {
    const Point p = pt(0.3, -0.8);
    CHECK(std::abs(apply_operator(DiffOperator::laplace(2), zf("x^2 - y^2"), p)) < 1e-14);
    CHECK(std::abs(apply_operator(DiffOperator::cauchy_riemann(), zf("conj(z)"), p) - 1.0) < 1e-14);
    CHECK(std::abs(apply_operator(DiffOperator::cauchy_riemann(), zf("z^2"), p)) < 1e-14);
    for (const auto& P : {DiffOperator::laplace(2), DiffOperator::heat(1), DiffOperator::cauchy_riemann()})
      CHECK(std::abs(apply_operator(P, zf("7"), p)) == 0.0);
  }

  TEST_CASE("heat kernel residuals") {
    const DomainPtr X = std::make_shared<const Domain>(Domain::half_space(2, 0, 0.0));
    const CompactGrid g = box_grid(X, pt(1.0, -1.0), pt(2.0, 1.0), 0.1);
    const ScalarField u = tx("t^(-0.5)*exp(-x^2/(4*t))");
    CHECK(membership_residual(DiffOperator::heat(1), u, g) < 1e-6);
    CHECK(membership_residual(DiffOperator::heat(1), u.without_oracle(), g) < 1e-4);
  }

  TEST_CASE("exponential solutions") {
    const DiffOperator H = DiffOperator::heat(1);
    const ExponentialSolution e = make_exponential_solution(H, {1.0, 1.0});
    const CompactGrid g = box_grid(plane(), pt(-1, -1), pt(1, 1), 0.25);
    CHECK(membership_residual(H, e.field, g) == 0.0);
    const Point p = pt(0.2, 0.5);
    CHECK(std::abs(*e.field.derivative({2, 1}, p) - std::exp(0.7)) < 1e-13);

    const Complex i(0.0, 1.0);
    const ExponentialSolution osc = make_exponential_solution(H, {i, std::sqrt(i)});
    CHECK(membership_residual(H, osc.field, g) < 1e-12);

    try {
      make_exponential_solution(DiffOperator::laplace(2), {1.0, 0.0});
      FAIL("accepted a point outside the variety");
    } catch (const NotInVariety& err) {
      CHECK(err.value() == Complex(1.0));
    }
  }

  TEST_CASE("symbols") {
    const std::vector<Complex> xi = {1.0, 1.0};
    CHECK(std::abs(DiffOperator::heat(1).symbol(xi)) == 0.0);
    CHECK(DiffOperator::laplace(2).symbol(xi) == Complex(2.0));
    CHECK(DiffOperator::heat(1).order() == 2);
  }

  TEST_CASE("elliptic spot checks") {
    const EllipticSpotCheck lap = elliptic_spot_check(DiffOperator::laplace(3));
    CHECK(lap.passes);
    CHECK(lap.min_principal == doctest::Approx(1.0));
    CHECK(lap.max_principal == doctest::Approx(1.0));
    // The heat principal part -xi_1^2 vanishes only on a null set, which
    // random directions miss; the sampled ratio is still far from 1.
    const EllipticSpotCheck heat = elliptic_spot_check(DiffOperator::heat(1));
    CHECK(heat.min_principal < 1e-2 * heat.max_principal);
  }

  TEST_CASE("heat invariance conditions") {
    const CompactGrid probe = box_grid(plane(), pt(-1, -1), pt(1, 1), 0.25);
    const InvarianceVerdict scale = verify_heat_invariance(tx("1"), SelfMap::parse({"t/4", "x/2"}, kTX), probe, 1e-10);
    CHECK(scale.overall);
    for (const auto& [k, c] : scale.conditions) CHECK_MESSAGE(c.residual < 1e-10, k);
    CHECK(scale.conditions.size() == 6);

    const InvarianceVerdict swap = verify_heat_invariance(tx("1"), SelfMap::parse({"x", "t"}, kTX), probe, 1e-10);
    CHECK_FALSE(swap.overall);
    CHECK(swap.conditions.at("c_time").residual == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_FALSE(swap.conditions.at("c_time").pass);

    CHECK(verify_heat_invariance(tx("1"), SelfMap::identity(2), probe, 1e-10).overall);
  }

  TEST_CASE("reference heat solutions are solutions") {
    for (int d : {1, 2}) {
      const CompactGrid g = box_grid(std::make_shared<const Domain>(Domain::whole(d + 1)), Point::Constant(d + 1, -1.0),
                                     Point::Constant(d + 1, 1.0), 0.5);
      for (const auto& u : heat_solutions(d)) CHECK_MESSAGE(membership_residual(DiffOperator::heat(d), u, g) < 1e-12, u.label());
    }
  }

  TEST_CASE("closure sampling") {
    const CompactGrid K = ball_grid(unit_disk(), pt(0, 0), 0.75, 0.25);
    const ClosureReport good = closure_sampling_check(complex_op("z", "z^2", unit_disk()), {zf("1"), zf("z"), zf("z^2")}, K, 1e-8);
    CHECK(good.pass);
    CHECK(good.residual < 1e-8);
    const ClosureReport bad = closure_sampling_check(complex_op("conj(z)", "z", unit_disk()), {zf("1")}, K, 1e-6);
    CHECK_FALSE(bad.pass);
    CHECK(bad.residual == doctest::Approx(1.0));

    const WCOperator id{tx("1"), SelfMap::identity(2), heat_space()};
    const CompactGrid probe = box_grid(plane(), pt(-1, -1), pt(1, 1), 0.5);
    CHECK(closure_sampling_check(id, heat_solutions(1), probe, 1e-12).residual < 1e-12);
    const WCOperator scale{tx("1"), SelfMap::parse({"t/4", "x/2"}, kTX), heat_space()};
    CHECK(closure_sampling_check(scale, heat_solutions(1), probe, 1e-10).pass);
  }
}
