#pragma once

// Weighted composition operators C_{w,psi} f = w * (f o psi): cocycles,
// iterates and Cesaro means.

#include <limits>
#include <vector>

#include "wco/core.hpp"
#include "wco/field.hpp"
#include "wco/funcspace.hpp"

namespace wco {

struct WCOperator {
  ScalarField weight;
  SelfMap symbol;
  SpaceInstance space;

  int dim() const { return symbol.dim(); }
  const Domain* domain() const { return space.domain.get(); }

  /// Unweighted C_psi (w = 1).
  static WCOperator composition(SelfMap psi, SpaceInstance space);
};

/// prod_{j<m} w(psi^j(x)) kept as log-magnitude and unit phase so deep
/// iterates of growing weights do not overflow.
struct CocycleValue {
  double log_abs = 0.0;  // -inf when some factor vanishes
  Complex phase{1.0, 0.0};

  bool zero() const { return log_abs == -std::numeric_limits<double>::infinity(); }
  Complex value() const;
};

CocycleValue cocycle_log(const WCOperator& op, const Point& x, int m);

/// prod_{j=0}^{m-1} w(psi^j(x)); 1 for m = 0. Throws LeftDomain.
Complex cocycle(const WCOperator& op, const Point& x, int m);

/// C^m_{w,psi} f as a lazy field: x -> cocycle(x, m) f(psi^m(x)). Carries a
/// jet oracle when w, psi and f do.
ScalarField apply_iterate(const WCOperator& op, const ScalarField& f, int m);

/// T_[n] f = (1/n) sum_{m=1}^n C^m f, one trajectory per evaluation point.
ScalarField cesaro_mean(const WCOperator& op, const ScalarField& f, int n);

/// Trajectories psi^m(x) and log-cocycles for every grid point, m = 0..depth,
/// extended on demand. Not thread safe; confine to one diagnostic session.
class IterateSampler {
 public:
  IterateSampler(const WCOperator& op, const CompactGrid& grid);

  void advance_to(int m);
  int depth() const { return depth_; }
  std::size_t size() const { return grid_.size(); }
  const CompactGrid& grid() const { return grid_; }

  /// psi^m(x_k); throws LeftDomain when the trajectory left before m.
  Point image(std::size_t k, int m) const;
  CocycleValue cocycle_at(std::size_t k, int m) const;
  /// First iterate index at which x_k left the domain, -1 if never (so far).
  int left_at(std::size_t k) const { return left_[k]; }

  /// log sup_K |C^m f| over the grid (log of 0 is -inf).
  double log_sup(const ScalarField& f, int m) const;
  Complex iterate_value(const ScalarField& f, std::size_t k, int m) const;

 private:
  WCOperator op_;
  CompactGrid grid_;
  int depth_ = 0;
  std::vector<std::vector<Point>> images_;         // [k][m]
  std::vector<std::vector<CocycleValue>> cocycles_;  // [k][m]
  std::vector<int> left_;
};

}  // namespace wco
