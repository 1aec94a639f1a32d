#include "wco/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace wco {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double binomial(int n, int k) {
  double b = 1.0;
  for (int j = 1; j <= k; ++j) b = b * (n - k + j) / j;
  return b;
}

std::string describe_vector(const Point& x) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ")";
  return os.str();
}

}  // namespace

// Domain ----------------------------------------------------------------------

Domain::Domain(int dim, Predicate contains, Distance dist, std::optional<Box> bounding_hint,
               std::string description, bool analytic_distance)
    : dim_(dim),
      contains_(std::move(contains)),
      dist_(std::move(dist)),
      hint_(std::move(bounding_hint)),
      description_(std::move(description)),
      analytic_(analytic_distance) {}

Domain Domain::whole(int d) {
  return Domain(
      d, [](const Point&) { return true; }, [](const Point&) { return kInf; }, std::nullopt,
      "R^" + std::to_string(d));
}

Domain Domain::ball(Point center, double radius) {
  const int d = static_cast<int>(center.size());
  Box hint{center.array() - radius, center.array() + radius};
  return Domain(
      d, [center, radius](const Point& x) { return (x - center).norm() < radius; },
      [center, radius](const Point& x) { return std::max(0.0, radius - (x - center).norm()); },
      hint, "ball" + describe_vector(center) + " r=" + format_double(radius));
}

Domain Domain::half_space(int d, int axis, double offset) {
  return Domain(
      d, [axis, offset](const Point& x) { return x[axis] > offset; },
      [axis, offset](const Point& x) { return std::max(0.0, x[axis] - offset); }, std::nullopt,
      "half-space x" + std::to_string(axis) + ">" + format_double(offset));
}

Domain Domain::sampled(int d, Predicate contains, Eigen::MatrixXd boundary_samples,
                       std::string description) {
  auto inside = contains;
  return Domain(
      d, std::move(contains),
      [inside, boundary_samples](const Point& x) {
        if (!inside(x)) return 0.0;
        if (boundary_samples.cols() == 0) return kInf;
        return (boundary_samples.colwise() - x).colwise().norm().minCoeff();
      },
      std::nullopt, std::move(description), false);
}

// CompactGrid -----------------------------------------------------------------

CompactGrid::CompactGrid(Eigen::MatrixXd points, std::string source, double spacing,
                         DomainPtr domain, Coverage coverage)
    : points_(std::move(points)),
      source_(std::move(source)),
      spacing_(spacing),
      domain_(std::move(domain)),
      coverage_(std::move(coverage)) {
  if (!(spacing_ > 0.0)) throw Error("grid spacing must be positive");
}

bool CompactGrid::covers(const Point& y, double pad) const {
  switch (coverage_.kind) {
    case Coverage::Kind::Ball:
      return (y - coverage_.center).norm() <= coverage_.radius + pad;
    case Coverage::Kind::Box:
      return ((y.array() >= coverage_.box.lower.array() - pad) &&
              (y.array() <= coverage_.box.upper.array() + pad))
          .all();
    case Coverage::Kind::Level: {
      if (!domain_) return false;
      return Exhaustion{domain_, coverage_.level}.closure_contains(y, pad);
    }
    case Coverage::Kind::Points:
      if (empty()) return false;
      return (points_.colwise() - y).colwise().norm().minCoeff() <= spacing_ + pad;
  }
  return false;
}

CompactGrid CompactGrid::merged_with(const CompactGrid& other) const {
  if (empty()) return other;
  if (other.empty()) return *this;
  Eigen::MatrixXd pts(dim(), points_.cols() + other.points_.cols());
  pts << points_, other.points_;
  return CompactGrid(std::move(pts), source_ + " + " + other.source_,
                     std::max(spacing_, other.spacing_), domain_);
}

CompactGrid box_grid(const DomainPtr& domain, const Point& lower, const Point& upper, double h) {
  const int d = static_cast<int>(lower.size());
  std::vector<int> counts(static_cast<std::size_t>(d));
  Point step(d);
  double actual = 0.0;
  for (int i = 0; i < d; ++i) {
    const double len = upper[i] - lower[i];
    const int n = len > 0.0 ? static_cast<int>(std::ceil(len / h - 1e-12)) : 0;
    counts[static_cast<std::size_t>(i)] = n + 1;
    step[i] = n > 0 ? len / n : 0.0;
    actual = std::max(actual, step[i]);
  }
  std::vector<Point> pts;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (;;) {
    Point x(d);
    for (int i = 0; i < d; ++i) x[i] = lower[i] + idx[static_cast<std::size_t>(i)] * step[i];
    if (!domain || domain->contains(x)) pts.push_back(x);
    int i = 0;
    while (i < d && ++idx[static_cast<std::size_t>(i)] == counts[static_cast<std::size_t>(i)]) {
      idx[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == d) break;
  }
  Eigen::MatrixXd m(d, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t k = 0; k < pts.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = pts[k];
  Coverage cov;
  cov.kind = Coverage::Kind::Box;
  cov.box = {lower, upper};
  return CompactGrid(std::move(m), "box" + describe_vector(lower) + "-" + describe_vector(upper),
                     actual > 0.0 ? actual : h, domain, cov);
}

CompactGrid ball_grid(const DomainPtr& domain, const Point& center, double radius, double h) {
  const CompactGrid box = box_grid(domain, center.array() - radius, center.array() + radius, h);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < box.points().cols(); ++k)
    if ((box.points().col(k) - center).norm() <= radius * (1.0 + 1e-12)) keep.push_back(k);
  Eigen::MatrixXd m(center.size(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    m.col(static_cast<Eigen::Index>(k)) = box.points().col(keep[k]);
  Coverage cov;
  cov.kind = Coverage::Kind::Ball;
  cov.center = center;
  cov.radius = radius;
  return CompactGrid(std::move(m), "ball" + describe_vector(center) + " r=" + format_double(radius),
                     box.spacing(), domain, cov);
}

CompactGrid circle_grid(const DomainPtr& domain, const Point& center, double radius, int count) {
  Eigen::MatrixXd m(2, count);
  for (int k = 0; k < count; ++k) {
    const double theta = 2.0 * M_PI * k / count;
    m(0, k) = center[0] + radius * std::cos(theta);
    m(1, k) = center[1] + radius * std::sin(theta);
  }
  Coverage cov;
  cov.kind = Coverage::Kind::Ball;
  cov.center = center;
  cov.radius = radius;
  return CompactGrid(std::move(m), "circle" + describe_vector(center) + " r=" + format_double(radius),
                     2.0 * M_PI * radius / count, domain, cov);
}

CompactGrid point_grid(const DomainPtr& domain, const std::vector<Point>& points,
                       std::string source) {
  if (points.empty()) return CompactGrid(Eigen::MatrixXd(0, 0), std::move(source), 1.0, domain);
  Eigen::MatrixXd m(points.front().size(), static_cast<Eigen::Index>(points.size()));
  for (std::size_t k = 0; k < points.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = points[k];
  double spacing = 1.0;
  if (points.size() > 1) {
    spacing = kInf;
    for (std::size_t a = 0; a < points.size(); ++a)
      for (std::size_t b = a + 1; b < points.size(); ++b)
        spacing = std::min(spacing, (points[a] - points[b]).norm());
    if (!(spacing > 0.0) || !std::isfinite(spacing)) spacing = 1.0;
  }
  return CompactGrid(std::move(m), std::move(source), spacing, domain);
}

// Exhaustion ----------------------------------------------------------------

bool Exhaustion::contains(const Point& x) const {
  return x.norm() < level && domain->dist_to_complement(x) > 1.0 / level;
}

bool Exhaustion::closure_contains(const Point& x, double pad) const {
  return x.norm() <= level + pad && domain->dist_to_complement(x) >= 1.0 / level - pad;
}

double required_level(const Domain& domain, const Point& x, double pad) {
  const double norm = x.norm();
  const double dist = domain.dist_to_complement(x);
  if (!std::isfinite(norm) || !(dist > 0.0)) return kInf;
  double n = std::max(1.0, std::ceil(norm - pad));
  if (std::isfinite(dist)) n = std::max(n, std::ceil(1.0 / (dist + pad) - 1e-12));
  // guard against rounding at the boundary of the closure proxy
  while (!(norm <= n + pad && dist >= 1.0 / n - pad)) n += 1.0;
  return n;
}

std::pair<Exhaustion, CompactGrid> build_exhaustion(const DomainPtr& domain, int n,
                                                    double resolution) {
  Exhaustion ex{domain, n};
  const int d = domain->dim();
  const CompactGrid ball = ball_grid(nullptr, Point::Zero(d), n, resolution);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < ball.points().cols(); ++k) {
    const Point x = ball.points().col(k);
    if (domain->dist_to_complement(x) >= 1.0 / n) keep.push_back(k);
  }
  Eigen::MatrixXd m(d, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    m.col(static_cast<Eigen::Index>(k)) = ball.points().col(keep[k]);
  Coverage cov;
  cov.kind = Coverage::Kind::Level;
  cov.level = n;
  return {ex, CompactGrid(std::move(m), "K_" + std::to_string(n) + " of " + domain->description(),
                          ball.spacing(), domain, cov)};
}

CompactGrid map_grid(const CompactGrid& grid, const SelfMap& psi, int m) {
  if (m == 0) return grid;
  Eigen::MatrixXd out = grid.points();
  for (Eigen::Index k = 0; k < out.cols(); ++k) {
    Point y = out.col(k);
    for (int j = 1; j <= m; ++j) {
      y = psi(y);
      if (grid.domain() && !grid.domain()->contains(y)) throw LeftDomain(y, j);
    }
    out.col(k) = y;
  }
  return CompactGrid(std::move(out), "psi^" + std::to_string(m) + "(" + grid.source() + ")",
                     grid.spacing(), grid.domain());
}

// Derivatives ---------------------------------------------------------------

double fd_step(int total_order, const Point& x) {
  const double scale = std::max(1.0, x.size() ? x.cwiseAbs().maxCoeff() : 0.0);
  if (total_order <= 2) return std::max(1e-5, 1e-4 * scale);
  if (total_order == 3) return 2e-3 * scale;
  return 5e-3 * scale;
}

Complex finite_difference(const ScalarField& f, const MultiIndex& alpha, const Point& x,
                          const Domain* domain) {
  const int total = order(alpha);
  if (total == 0) return f(x);
  const double h = fd_step(total, x);
  const int d = static_cast<int>(alpha.size());

  // Per-axis stencil: sum_k (-1)^k C(a,k) g(x + (a/2 - k) h) / h^a.
  std::vector<int> k(static_cast<std::size_t>(d), 0);
  Complex acc(0.0);
  for (;;) {
    Point y = x;
    double weight = 1.0;
    for (int i = 0; i < d; ++i) {
      const int a = alpha[static_cast<std::size_t>(i)];
      if (a == 0) continue;
      const int ki = k[static_cast<std::size_t>(i)];
      y[i] += (0.5 * a - ki) * h;
      weight *= ((ki % 2) ? -1.0 : 1.0) * binomial(a, ki) / std::pow(h, a);
    }
    if (domain && !domain->contains(y)) throw StencilOutsideDomain(y);
    acc += weight * f(y);
    int i = 0;
    while (i < d && ++k[static_cast<std::size_t>(i)] > alpha[static_cast<std::size_t>(i)]) {
      k[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == d) break;
  }
  return acc;
}

Complex partial(const ScalarField& f, const MultiIndex& alpha, const Point& x,
                const Domain* domain) {
  if (auto v = f.derivative(alpha, x)) return *v;
  return finite_difference(f, alpha, x, domain);
}

Jet derivative_jet(const ScalarField& f, const Point& x, int ord, const Domain* domain) {
  if (f.has_jet()) return f.jet_at(x, ord);
  auto layout = JetLayout::get(static_cast<int>(x.size()), ord);
  Jet j(layout, Complex(0.0));
  for (std::size_t k = 0; k < layout->size(); ++k)
    j[k] = partial(f, layout->monomials[k], x, domain) / layout->factorials[k];
  return j;
}

// Seminorms -----------------------------------------------------------------

std::string SeminormSpec::describe() const {
  if (kind == Kind::Sup) return "sup on " + grid.source();
  return "C^" + std::to_string(order) + " on " + grid.source();
}

double eval_seminorm(const SeminormSpec& spec, const ScalarField& f) {
  double best = 0.0;
  const Domain* domain = spec.grid.domain().get();
  for (std::size_t k = 0; k < spec.grid.size(); ++k) {
    const Point x = spec.grid.point(k);
    if (spec.kind == SeminormSpec::Kind::Sup || spec.order == 0) {
      best = std::max(best, std::abs(f(x)));
      continue;
    }
    const Jet j = derivative_jet(f, x, spec.order, domain);
    const auto& layout = *j.layout();
    for (std::size_t c = 0; c < layout.size(); ++c)
      best = std::max(best, std::abs(j[c]) * layout.factorials[c]);
  }
  return best;
}

// Space instances -----------------------------------------------------------

bool SpaceInstance::sup_type() const {
  switch (tag) {
    case Tag::Continuous:
    case Tag::Holomorphic: return true;
    case Tag::PdeKernel: return op && op->hypoelliptic;
    case Tag::Cr: return false;
  }
  return false;
}

std::optional<DiffOperator> SpaceInstance::kernel_operator() const {
  if (tag == Tag::Holomorphic) return DiffOperator::cauchy_riemann();
  if (tag == Tag::PdeKernel) return op;
  return std::nullopt;
}

std::string SpaceInstance::tag_name() const {
  switch (tag) {
    case Tag::Continuous: return "continuous";
    case Tag::Cr: return r < 0 ? "smooth" : "cr(" + std::to_string(r) + ")";
    case Tag::Holomorphic: return "holomorphic";
    case Tag::PdeKernel: return "pde_kernel(" + (op ? op->name : std::string("?")) + ")";
  }
  return "?";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_grid_csv(std::ostream& os, const CompactGrid& grid) {
  for (int i = 0; i < grid.dim(); ++i) os << (i ? "," : "") << "x_" << i;
  os << '\n';
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point x = grid.point(k);
    for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? "," : "") << format_double(x[i]);
    os << '\n';
  }
}

}  // namespace wco
