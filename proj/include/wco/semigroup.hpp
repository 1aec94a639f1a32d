#pragma once

// T_t f = sum_k (t^k / k!) C^k_{w,psi} f with a certified truncation order.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wco/funcspace.hpp"
#include "wco/wcomp.hpp"

namespace wco {

struct TailBudget {
  double gamma = 0.0;  // 1.1 ||w||_L
  std::string source_spec;
  std::string target_spec;
  int N = 0;
  double tail_bound = 0.0;  // ||f||_L sum_{k>N} (t gamma)^k / k!, over-estimated
  double eps = 0.0;
  double t = 0.0;
  double f_norm_L = 0.0;
  int orbit_horizon = 0;
};

/// Upper bound for sum_{k>N} x^k / k! (x >= 0), valid for every N.
double exp_tail_bound(double x, int N);

/// Least N with norm * exp_tail_bound(x, N) < eps.
int truncation_order(double x, double norm, double eps);

/// Coefficient t^k / k!, by recurrence for t <= 50 and in log space beyond.
std::vector<double> series_coefficients(double t, int N);

/// Requires stable orbits of K (checked up to `orbit_horizon`) and, when L is
/// given, psi^k(K) inside L for every checked k; otherwise NoGrowthBound. L
/// defaults to the union of psi^k(K) over the horizon. Only sup seminorms
/// certify the tail.
std::pair<ScalarField, TailBudget> exp_apply(const WCOperator& op, const ScalarField& f, double t,
                                             double eps, const SeminormSpec& K,
                                             const std::optional<SeminormSpec>& L = std::nullopt,
                                             int orbit_horizon = 200);

struct SemigroupLawReport {
  double t = 0.0;
  double s = 0.0;
  double defect = 0.0;  // sup_probe |T_{t+s} f - T_t(T_s f)|
  double eps = 0.0;     // per application
  double tol = 0.0;
  bool pass = false;
};

SemigroupLawReport check_semigroup_law(const WCOperator& op, const ScalarField& f, double t,
                                       double s, const CompactGrid& probe, double tol);

struct GeneratorReport {
  std::vector<double> h;
  std::vector<double> defects;      // sup_probe |(T_h f - f)/h - C f|
  std::vector<double> half_defects; // same at h/2
  std::vector<double> ratios;       // defects / half_defects
  double scale = 0.0;               // sup_probe |C f|
  double tol = 0.0;
  bool decreasing = false;
  bool ratio_in_band = false;       // every ratio in [1.7, 2.3]
  bool pass = false;                // decreasing and final defect < tol (1 + scale)
};

std::vector<double> default_h_sequence();

GeneratorReport check_generator(const WCOperator& op, const ScalarField& f,
                                const CompactGrid& probe, const std::vector<double>& h_sequence,
                                double tol);

}  // namespace wco
