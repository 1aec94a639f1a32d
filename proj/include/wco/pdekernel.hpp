#pragma once

// Kernels of constant-coefficient operators P(d): residuals, exponential
// solutions, and invariance of the heat kernel under (w, psi).

#include <map>
#include <string>
#include <vector>

#include "wco/diff_operator.hpp"
#include "wco/funcspace.hpp"
#include "wco/wcomp.hpp"

namespace wco {

/// P(d)u(x) = sum_alpha a_alpha d^alpha u(x), derivatives from the oracle or FD.
Complex apply_operator(const DiffOperator& P, const ScalarField& u, const Point& x,
                       const Domain* domain = nullptr);

/// sup over the grid of |P(d)u|.
double membership_residual(const DiffOperator& P, const ScalarField& u, const CompactGrid& grid);

struct ExponentialSolution {
  std::vector<Complex> zeta;
  ScalarField field;  // exp(sum_j zeta_j x_j), d^alpha = zeta^alpha e_zeta exactly
};

/// Throws NotInVariety(P(zeta)) unless |P(zeta)| < 1e-12.
ExponentialSolution make_exponential_solution(const DiffOperator& P,
                                              const std::vector<Complex>& zeta);

/// Minimum of |P_m| over `samples` seeded points of the real unit sphere,
/// relative to its maximum; elliptic flags are only spot checked this way.
struct EllipticSpotCheck {
  double min_principal = 0.0;
  double max_principal = 0.0;
  bool passes = false;
};
EllipticSpotCheck elliptic_spot_check(const DiffOperator& P, int samples = 256,
                                      unsigned seed = 12345);

struct ConditionResult {
  double residual = 0.0;
  bool pass = false;
};

struct InvarianceVerdict {
  /// Keys: a_weight, a_wpsi_j, b, c_time, c_equal, d_orth.
  std::map<std::string, ConditionResult> conditions;
  bool overall = false;
  CompactGrid probe;
  double tol = 0.0;
};

/// Heat operator H = d_0 - sum_{j>=1} d_j^2 on R^{1+d}, coordinate 0 is time.
/// Each condition is a sup over the probe of:
///   a_weight  H(w)
///   a_wpsi_j  max_{j>=1} H(w psi_j)
///   b         H(w psi_0) - w |grad_x psi_1|^2
///   c_time    w |grad_x psi_0|^2
///   c_equal   max_{j,k>=1} w (|grad_x psi_j|^2 - |grad_x psi_k|^2)  (0 when d = 1)
///   d_orth    max_{0<=j!=k<=d} w <grad_x psi_j, grad_x psi_k>
InvarianceVerdict verify_heat_invariance(const ScalarField& w, const SelfMap& psi,
                                         const CompactGrid& probe, double tol);

/// Reference solutions of the heat equation on R^{1+space_dim}:
/// 1, x_j, |x|^2 + 2 d t, exp(t + x_1), and exp(i t + sqrt(i) x_1).
std::vector<ScalarField> heat_solutions(int space_dim);

struct ClosureReport {
  std::vector<std::string> labels;
  std::vector<double> residuals;  // membership residual of C_{w,psi}(u)
  double residual = 0.0;          // max
  bool pass = false;
  double tol = 0.0;
};

/// max_u membership_residual(P, C_{w,psi}(u), probe) with P the kernel
/// operator of op's space; pass iff below tol.
ClosureReport closure_sampling_check(const WCOperator& op, const std::vector<ScalarField>& solutions,
                                     const CompactGrid& probe, double tol);

}  // namespace wco
