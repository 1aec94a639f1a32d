#pragma once

// Domains of R^d, the canonical compact exhaustion, grid proxies for compact
// sets, and the seminorm families of the supported function spaces.

#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wco/core.hpp"
#include "wco/diff_operator.hpp"
#include "wco/field.hpp"

namespace wco {

struct Box {
  Point lower;
  Point upper;
};

/// An open subset X of R^d: membership predicate plus distance to R^d \ X
/// (infinity when X = R^d).
class Domain {
 public:
  using Predicate = std::function<bool(const Point&)>;
  using Distance = std::function<double(const Point&)>;

  Domain(int dim, Predicate contains, Distance dist, std::optional<Box> bounding_hint,
         std::string description, bool analytic_distance = true);

  static Domain whole(int d);
  static Domain ball(Point center, double radius);
  /// {x : x_axis > offset}.
  static Domain half_space(int d, int axis, double offset);
  /// Membership given; distance approximated by the nearest of the supplied
  /// boundary samples (columns). Cannot certify strict inequalities.
  static Domain sampled(int d, Predicate contains, Eigen::MatrixXd boundary_samples,
                        std::string description);

  int dim() const { return dim_; }
  bool contains(const Point& x) const { return contains_(x); }
  double dist_to_complement(const Point& x) const { return dist_(x); }
  const std::optional<Box>& bounding_hint() const { return hint_; }
  const std::string& description() const { return description_; }
  bool analytic_distance() const { return analytic_; }

 private:
  int dim_;
  Predicate contains_;
  Distance dist_;
  std::optional<Box> hint_;
  std::string description_;
  bool analytic_;
};

using DomainPtr = std::shared_ptr<const Domain>;

/// Region a grid stands in for; used for "K subset L" tests.
struct Coverage {
  enum class Kind { Ball, Box, Level, Points };
  Kind kind = Kind::Points;
  Point center;
  double radius = 0.0;
  Box box;
  int level = 0;  // Kind::Level: closure proxy {|x| <= n, dist >= 1/n}
};

/// Finite proxy for a compact K subset X. Points are the columns of a d x N
/// matrix.
class CompactGrid {
 public:
  CompactGrid() = default;
  CompactGrid(Eigen::MatrixXd points, std::string source, double spacing, DomainPtr domain,
              Coverage coverage = {});

  int dim() const { return static_cast<int>(points_.rows()); }
  std::size_t size() const { return static_cast<std::size_t>(points_.cols()); }
  bool empty() const { return points_.cols() == 0; }
  Point point(std::size_t k) const { return points_.col(static_cast<Eigen::Index>(k)); }
  const Eigen::MatrixXd& points() const { return points_; }
  const std::string& source() const { return source_; }
  double spacing() const { return spacing_; }
  const DomainPtr& domain() const { return domain_; }
  const Coverage& coverage() const { return coverage_; }

  /// Whether y lies in the region this grid discretizes, with padding.
  bool covers(const Point& y, double pad = 1e-9) const;
  /// Union of points; coverage falls back to the point set.
  CompactGrid merged_with(const CompactGrid& other) const;

 private:
  Eigen::MatrixXd points_;
  std::string source_;
  double spacing_ = 1.0;
  DomainPtr domain_;
  Coverage coverage_;
};

/// Axis-aligned lattice over [lower, upper] with endpoints, spacing <= h,
/// restricted to the domain.
CompactGrid box_grid(const DomainPtr& domain, const Point& lower, const Point& upper, double h);
/// Lattice points of the closed ball, restricted to the domain.
CompactGrid ball_grid(const DomainPtr& domain, const Point& center, double radius, double h);
/// `count` equispaced samples on a circle in R^2.
CompactGrid circle_grid(const DomainPtr& domain, const Point& center, double radius, int count);
CompactGrid point_grid(const DomainPtr& domain, const std::vector<Point>& points,
                       std::string source = "points");

/// X_n = {x : |x| < n, dist(x, R^d \ X) > 1/n}.
struct Exhaustion {
  DomainPtr domain;
  int level = 1;

  bool contains(const Point& x) const;
  /// Closure proxy K_n = {|x| <= n, dist >= 1/n}, padded.
  bool closure_contains(const Point& x, double pad = 1e-9) const;
};

/// Least n with x in the closure proxy K_n (infinity if none exists).
double required_level(const Domain& domain, const Point& x, double pad = 1e-9);

/// X_n together with a grid of K_n at spacing <= resolution.
std::pair<Exhaustion, CompactGrid> build_exhaustion(const DomainPtr& domain, int n,
                                                    double resolution);

/// {psi^m(x) : x in grid}; m = 0 returns the grid. Throws LeftDomain.
CompactGrid map_grid(const CompactGrid& grid, const SelfMap& psi, int m);

// Derivatives ---------------------------------------------------------------

/// Central-difference step for a derivative of the given total order at x.
double fd_step(int total_order, const Point& x);

/// Tensor-product central difference of order-2 accuracy. Throws
/// StencilOutsideDomain when a stencil point leaves `domain` (if given).
Complex finite_difference(const ScalarField& f, const MultiIndex& alpha, const Point& x,
                          const Domain* domain);

/// d^alpha f(x) from the oracle when present, finite differences otherwise.
Complex partial(const ScalarField& f, const MultiIndex& alpha, const Point& x,
                const Domain* domain);

/// All partials up to `order` at x packed as a jet (oracle or FD).
Jet derivative_jet(const ScalarField& f, const Point& x, int order, const Domain* domain);

// Seminorms -----------------------------------------------------------------

struct SeminormSpec {
  enum class Kind { Sup, Cr };
  Kind kind = Kind::Sup;
  CompactGrid grid;
  int order = 0;  // Cr only

  static SeminormSpec sup(CompactGrid grid) { return {Kind::Sup, std::move(grid), 0}; }
  static SeminormSpec cr(CompactGrid grid, int l) { return {Kind::Cr, std::move(grid), l}; }
  std::string describe() const;
};

/// ||f||_K (sup) or ||f||_{l,K} = max_{|alpha|<=l} sup_K |d^alpha f|.
double eval_seminorm(const SeminormSpec& spec, const ScalarField& f);

// Space instances -----------------------------------------------------------

struct SpaceInstance {
  enum class Tag { Continuous, Cr, Holomorphic, PdeKernel };
  Tag tag = Tag::Continuous;
  int r = -1;  // Cr: differentiability order, -1 for C^infinity
  std::optional<DiffOperator> op;  // PdeKernel
  DomainPtr domain;
  double membership_residual_tol = 1e-8;

  /// Compact-open (sup) seminorms define the topology.
  bool sup_type() const;
  /// Operator whose kernel the instance is (Cauchy-Riemann for holomorphic).
  std::optional<DiffOperator> kernel_operator() const;
  std::string tag_name() const;
};

/// One point per row, columns x_0..x_{d-1}, 17 significant digits.
void write_grid_csv(std::ostream& os, const CompactGrid& grid);

/// 17-significant-digit decimal.
std::string format_double(double v);

}  // namespace wco
