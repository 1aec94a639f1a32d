#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "support.hpp"
#include "wco/smoothcalc.hpp"

using namespace wco;
using namespace wco::testing;

namespace {

// Set partitions of {0..n-1} as restricted growth strings; weight d^{blocks}.
double partition_sum(int n, int d) {
  double total = 0.0;
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == n) {
      total += std::pow(d, blocks);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      a[static_cast<std::size_t>(i)] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return total;
}

// Integer partitions of n.
int integer_partitions(int n, int max_part) {
  if (n == 0) return 1;
  int c = 0;
  for (int k = std::min(n, max_part); k >= 1; --k) c += integer_partitions(n - k, k);
  return c;
}

WCOperator unweighted(const std::string& psi_text) { return line_op("1", psi_text); }

}  // namespace

TEST_SUITE("smoothcalc") {
  TEST_CASE("first-order tables have one term per component") {
    for (int i = 0; i < 2; ++i) {
      const ExpansionTable t = build_expansion(unit_index(2, i), 2);
      REQUIRE(t.terms.size() == 2);
      for (int c = 0; c < 2; ++c) {
        CHECK(t.terms[static_cast<std::size_t>(c)].beta == unit_index(2, c));
        REQUIRE(t.terms[static_cast<std::size_t>(c)].factors.size() == 1);
        CHECK(t.terms[static_cast<std::size_t>(c)].factors[0].gamma == unit_index(2, i));
        CHECK(t.terms[static_cast<std::size_t>(c)].factors[0].component == c);
      }
    }
  }

  TEST_CASE("second derivative in one variable") {
    const ExpansionTable t = build_expansion({2}, 1);
    REQUIRE(t.terms.size() == 2);
    bool saw_two = false, saw_one = false;
    for (const auto& term : t.terms) {
      if (term.beta == MultiIndex{2}) {
        saw_two = true;
        REQUIRE(term.factors.size() == 2);
        for (const auto& f : term.factors) CHECK(f.gamma == MultiIndex{1});
      } else if (term.beta == MultiIndex{1}) {
        saw_one = true;
        REQUIRE(term.factors.size() == 1);
        CHECK(term.factors[0].gamma == MultiIndex{2});
      }
    }
    CHECK(saw_two);
    CHECK(saw_one);
  }

  TEST_CASE("term counts match set partitions") {
    for (int n = 1; n <= 6; ++n) {
      const ExpansionTable raw = build_expansion({n}, 1, false);
      const ExpansionTable merged = build_expansion({n}, 1, true);
      CHECK(static_cast<double>(raw.terms.size()) == partition_sum(n, 1));
      CHECK(static_cast<double>(merged.total_terms()) == partition_sum(n, 1));
      CHECK(static_cast<int>(merged.terms.size()) == integer_partitions(n, n));
    }
    for (const MultiIndex& a : {MultiIndex{1, 1}, MultiIndex{2, 1}, MultiIndex{0, 3}, MultiIndex{2, 2}}) {
      const ExpansionTable raw = build_expansion(a, 2, false);
      CHECK(static_cast<double>(raw.terms.size()) == partition_sum(order(a), 2));
      CHECK(build_expansion(a, 2, true).total_terms() == raw.total_terms());
    }
  }

  TEST_CASE("n(beta) and the constant B") {
    for (const MultiIndex& a : {MultiIndex{3}, MultiIndex{1, 2}}) {
      const int d = static_cast<int>(a.size());
      const ExpansionTable t = build_expansion(a, d);
      long sum = 0, top = 0;
      for (const auto& [beta, n] : t.n_beta) {
        sum += n;
        top = std::max(top, n);
        CHECK(order(beta) >= 1);
        CHECK(order(beta) <= order(a));
      }
      CHECK(sum == t.total_terms());
      const double prefactor = d == 1 ? order(a) : std::pow(d, order(a));
      CHECK(t.B_constant == prefactor * static_cast<double>(top));
    }
    CHECK(expansion_constant(0, 1) == 1.0);
    for (int d = 1; d <= 2; ++d)
      for (int l = 1; l <= 3; ++l) CHECK(expansion_constant(l, d) >= expansion_constant(l - 1, d));
  }

  TEST_CASE("hand-computed values") {
    const ScalarField sq = ScalarField::parse("x0^2", {"x0"});
    CHECK(eval_expansion(build_expansion({2}, 1), unweighted("x0^3"), sq, 1, pt(1.0)) == Complex(30.0));
    const ScalarField id = ScalarField::parse("x0", {"x0"});
    CHECK(eval_expansion(build_expansion({1}, 1), unweighted("2*x0"), id, 2, pt(1.0)).real() == doctest::Approx(4.0));
    const ScalarField f = ScalarField::parse("sin(x0)", {"x0"});
    for (int k = 1; k <= 4; ++k)
      CHECK(std::abs(eval_expansion(build_expansion({k}, 1), unweighted("x0"), f, 3, pt(0.4)) - *f.derivative({k}, pt(0.4))) < 1e-14);
  }

  TEST_CASE("expansion matches jets of the iterate") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    const std::vector<std::string> psi = {"0.5*x0 - 0.2*x1^2", "sin(x0)/3 + 0.4*x1"};
    const WCOperator op{ScalarField::constant(2, 1.0), SelfMap::parse(psi, {"x0", "x1"}),
                        space(SpaceInstance::Tag::Cr, plane())};
    const ScalarField f = ScalarField::parse("exp(x0)*x1 + x1^3", {"x0", "x1"});
    for (const auto& a : indices_up_to(2, 3)) {
      if (order(a) == 0) continue;
      const ExpansionTable t = build_expansion(a, 2);
      for (int m = 1; m <= 3; ++m) {
        const Point x = pt(u(rng), u(rng));
        const Complex exact = *apply_iterate(op, f, m).derivative(a, x);
        CHECK(std::abs(eval_expansion(t, op, f, m, x) - exact) < 1e-11 * (1 + std::abs(exact)));
      }
    }
  }

  TEST_CASE("seminorm bounds on the examples") {
    const CompactGrid I = box_grid(line(), pt(0.0), pt(1.0), 0.05);
    const CrBound a = cr_seminorm_bound(unweighted("x0"), ScalarField::parse("x0^3 + 1", {"x0"}), 2, I, 4);
    CHECK(a.holds);
    CHECK(a.lhs == doctest::Approx(eval_seminorm(SeminormSpec::cr(I, 2), ScalarField::parse("x0^3 + 1", {"x0"}))));

    const CrBound b = cr_seminorm_bound(unweighted("x0/2"), ScalarField::parse("x0^2", {"x0"}), 2, I, 3);
    CHECK(b.exact);
    CHECK(b.holds);
    CHECK(b.lhs == doctest::Approx(1.0 / 32.0));

    const WCOperator rot{ScalarField::constant(2, 1.0),
                         SelfMap::parse({"cos(pi/4)*x0 - sin(pi/4)*x1", "sin(pi/4)*x0 + cos(pi/4)*x1"}, {"x0", "x1"}),
                         space(SpaceInstance::Tag::Cr, plane())};
    const CompactGrid D = ball_grid(plane(), pt(0, 0), 1.0, 0.25);
    CHECK(cr_seminorm_bound(rot, ScalarField::parse("x0*x1", {"x0", "x1"}), 2, D, 4).holds);

    const CrBound w = weighted_cr_growth(line_op("exp(-x0)", "x0/2"), ScalarField::parse("x0", {"x0"}), 1, I, std::nullopt, 2);
    CHECK(w.exact);
    CHECK(w.holds);

    const CrBound two = weighted_cr_growth(line_op("2", "x0"), ScalarField::parse("x0 + 3", {"x0"}), 0, I, std::nullopt, 5);
    CHECK(two.lhs == doctest::Approx(32.0 * 4.0));
    CHECK(two.weight_factor == doctest::Approx(32.0));
    CHECK(two.holds);
  }

  TEST_CASE("bounds hold for random smooth contractions") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> coef(-0.45, 0.45);
    const CompactGrid I = box_grid(line(), pt(-1.0), pt(1.0), 0.1);
    for (int trial = 0; trial < 10; ++trial) {
      const std::string psi = format_double(coef(rng)) + "*x0 + " + format_double(coef(rng) / 2) + "*x0^2";
      const std::string w = "1 + " + format_double(coef(rng)) + "*sin(x0)";
      const WCOperator op = line_op(w, psi);
      const ScalarField f = ScalarField::parse("exp(x0/2) + x0^2", {"x0"});
      for (int l = 0; l <= 2; ++l) {
        CHECK(cr_seminorm_bound(op, f, l, I, 3).holds);
        CHECK(weighted_cr_growth(op, f, l, I, std::nullopt, 3).holds);
      }
    }
  }

  TEST_CASE("a source grid that misses an orbit is rejected") {
    const CompactGrid I = box_grid(line(), pt(0.0), pt(1.0), 0.1);
    const CompactGrid small = box_grid(line(), pt(0.0), pt(0.5), 0.1);
    CHECK_THROWS_AS(weighted_cr_growth(line_op("1", "x0 + 0.1"), ScalarField::parse("x0", {"x0"}), 1, I, small, 2), Error);
  }
}
