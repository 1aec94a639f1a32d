#pragma once

#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "wco/core.hpp"

namespace wco {

/// Constant-coefficient operator P(d) = sum_alpha a_alpha d^alpha.
/// The elliptic/hypoelliptic flags are declarations, not computed.
struct DiffOperator {
  std::map<MultiIndex, Complex> coefficients;
  bool elliptic = false;
  bool hypoelliptic = false;
  std::string name;

  int dim() const;
  /// max |alpha| over nonzero coefficients.
  int order() const;
  /// P(xi) = sum a_alpha xi^alpha.
  Complex symbol(std::span<const Complex> xi) const;
  /// P_m(xi), the top-degree homogeneous part.
  Complex principal_symbol(std::span<const Complex> xi) const;

  static DiffOperator laplace(int d);
  /// d_0 - sum_{j>=1} d_j^2 on R^{1+space_dim}; coordinate 0 is time.
  static DiffOperator heat(int space_dim);
  /// (d_0 + i d_1) / 2 on C ~ R^2.
  static DiffOperator cauchy_riemann();
  static DiffOperator from_triples(int dim,
                                   const std::vector<std::tuple<MultiIndex, double, double>>& terms,
                                   std::string name = "P");
};

}  // namespace wco
