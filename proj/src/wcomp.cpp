#include "wco/wcomp.hpp"

#include <cmath>
#include <limits>

namespace wco {

namespace {

constexpr double kOverflowLog = 690.77552789821368;  // log(1e300)

bool finite_point(const Point& y) { return y.allFinite(); }

void check_inside(const WCOperator& op, const Point& y, int j) {
  if (!finite_point(y) || (op.domain() && !op.domain()->contains(y))) throw LeftDomain(y, j);
}

Point jet_values(const std::vector<Jet>& y) {
  Point p(static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) p[static_cast<Eigen::Index>(i)] = y[i].value().real();
  return p;
}

// Shared iterate loop for complex values and jets:
//   returns prod_{j<m} w(psi^j x) * f(psi^m x)
// and the Cesaro variant sum_{m=1}^n of the same.
struct PointOps {
  using Value = Complex;
  using Arg = Point;
  static Value one(const Arg&) { return Complex(1.0); }
  static Point where(const Arg& y) { return y; }
};

struct JetOps {
  using Value = Jet;
  using Arg = std::vector<Jet>;
  static Value one(const Arg& y) { return Jet(y[0].layout(), Complex(1.0)); }
  static Point where(const Arg& y) { return jet_values(y); }
};

template <class Ops>
typename Ops::Value iterate_at(const WCOperator& op, const ScalarField& f,
                               typename Ops::Arg y, int m) {
  auto prod = Ops::one(y);
  for (int j = 0; j < m; ++j) {
    prod = prod * op.weight(y);
    y = op.symbol(y);
    check_inside(op, Ops::where(y), j + 1);
  }
  return prod * f(y);
}

template <class Ops>
typename Ops::Value cesaro_at(const WCOperator& op, const ScalarField& f, typename Ops::Arg y,
                              int n) {
  auto prod = Ops::one(y);
  auto sum = Ops::one(y) * Complex(0.0);
  for (int m = 1; m <= n; ++m) {
    prod = prod * op.weight(y);
    y = op.symbol(y);
    check_inside(op, Ops::where(y), m);
    sum = sum + prod * f(y);
  }
  return sum * Complex(1.0 / n);
}

}  // namespace

WCOperator WCOperator::composition(SelfMap psi, SpaceInstance space) {
  const int d = psi.dim();
  return WCOperator{ScalarField::constant(d, 1.0), std::move(psi), std::move(space)};
}

Complex CocycleValue::value() const {
  if (zero()) return Complex(0.0);
  return std::exp(log_abs) * phase;
}

CocycleValue cocycle_log(const WCOperator& op, const Point& x, int m) {
  CocycleValue c;
  Point y = x;
  for (int j = 0; j < m; ++j) {
    if (j > 0) check_inside(op, y, j);
    const Complex w = op.weight(y);
    const double a = std::abs(w);
    if (a == 0.0) {
      c.log_abs = -std::numeric_limits<double>::infinity();
      c.phase = Complex(1.0);
    } else if (!c.zero()) {
      c.log_abs += std::log(a);
      c.phase *= w / a;
    }
    y = op.symbol(y);
  }
  return c;
}

Complex cocycle(const WCOperator& op, const Point& x, int m) {
  Complex prod(1.0);
  Point y = x;
  for (int j = 0; j < m; ++j) {
    if (j > 0) check_inside(op, y, j);
    prod *= op.weight(y);
    if (std::abs(prod) > 1e300 || !std::isfinite(std::abs(prod))) {
      const CocycleValue c = cocycle_log(op, x, m);
      return c.log_abs > kOverflowLog ? c.value() : prod;
    }
    y = op.symbol(y);
  }
  return prod;
}

ScalarField apply_iterate(const WCOperator& op, const ScalarField& f, int m) {
  if (m == 0) return f;
  const std::string label = "C^" + std::to_string(m) + "(" + f.label() + ")";
  auto value = [op, f, m](const Point& x) { return iterate_at<PointOps>(op, f, x, m); };
  if (f.has_jet() && op.weight.has_jet() && op.symbol.has_oracle())
    return ScalarField(
        f.dim(), value,
        [op, f, m](const std::vector<Jet>& x) { return iterate_at<JetOps>(op, f, x, m); }, label);
  return ScalarField(f.dim(), value, label);
}

ScalarField cesaro_mean(const WCOperator& op, const ScalarField& f, int n) {
  if (n < 1) throw Error("Cesaro mean needs n >= 1");
  const std::string label = "T_[" + std::to_string(n) + "](" + f.label() + ")";
  auto value = [op, f, n](const Point& x) { return cesaro_at<PointOps>(op, f, x, n); };
  if (f.has_jet() && op.weight.has_jet() && op.symbol.has_oracle())
    return ScalarField(
        f.dim(), value,
        [op, f, n](const std::vector<Jet>& x) { return cesaro_at<JetOps>(op, f, x, n); }, label);
  return ScalarField(f.dim(), value, label);
}

// IterateSampler ----------------------------------------------------------

IterateSampler::IterateSampler(const WCOperator& op, const CompactGrid& grid)
    : op_(op), grid_(grid), images_(grid.size()), cocycles_(grid.size()), left_(grid.size(), -1) {
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    images_[k].push_back(grid_.point(k));
    cocycles_[k].push_back(CocycleValue{});
  }
}

void IterateSampler::advance_to(int m) {
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    if (left_[k] >= 0) continue;
    for (int j = depth_; j < m; ++j) {
      const Point& y = images_[k].back();
      CocycleValue c = cocycles_[k].back();
      const Complex w = op_.weight(y);
      const double a = std::abs(w);
      if (a == 0.0) {
        c.log_abs = -std::numeric_limits<double>::infinity();
      } else if (!c.zero()) {
        c.log_abs += std::log(a);
        c.phase *= w / a;
      }
      Point next = op_.symbol(y);
      if (!finite_point(next) || (op_.domain() && !op_.domain()->contains(next))) {
        left_[k] = j + 1;
        break;
      }
      images_[k].push_back(std::move(next));
      cocycles_[k].push_back(c);
    }
  }
  depth_ = std::max(depth_, m);
}

Point IterateSampler::image(std::size_t k, int m) const {
  if (m >= static_cast<int>(images_[k].size())) {
    if (left_[k] >= 0) throw LeftDomain(op_.symbol(images_[k].back()), left_[k]);
    throw Error("sampler not advanced far enough");
  }
  return images_[k][static_cast<std::size_t>(m)];
}

CocycleValue IterateSampler::cocycle_at(std::size_t k, int m) const {
  if (m >= static_cast<int>(cocycles_[k].size())) {
    if (left_[k] >= 0) throw LeftDomain(op_.symbol(images_[k].back()), left_[k]);
    throw Error("sampler not advanced far enough");
  }
  return cocycles_[k][static_cast<std::size_t>(m)];
}

Complex IterateSampler::iterate_value(const ScalarField& f, std::size_t k, int m) const {
  const CocycleValue c = cocycle_at(k, m);
  return c.value() * f(image(k, m));
}

double IterateSampler::log_sup(const ScalarField& f, int m) const {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    const CocycleValue c = cocycle_at(k, m);
    if (c.zero()) continue;
    const double a = std::abs(f(image(k, m)));
    if (a == 0.0) continue;
    best = std::max(best, c.log_abs + std::log(a));
  }
  return best;
}

}  // namespace wco
