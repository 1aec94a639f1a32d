#pragma once

// Empirical diagnostics for stable orbits, power boundedness,
// (m-)topologizability and (uniform) mean ergodicity. Every positive verdict
// is evidence up to a finite horizon, not a proof.

#include <optional>
#include <string>
#include <vector>

#include "wco/funcspace.hpp"
#include "wco/wcomp.hpp"

namespace wco {

struct EscapeEvidence {
  Point point;       // starting point x
  int iterate = 0;   // m
  double magnitude = 0.0;  // |psi^m(x)|
  std::string reason;      // "exhaustion" | "left_domain" | "uncovered"
};

struct OrbitReport {
  bool stable = false;
  int horizon = 0;
  std::optional<int> enclosing_level;
  std::optional<EscapeEvidence> escape_evidence;
  bool monotone_escape = false;
  /// Least exhaustion level containing psi^m(K), m = 0..horizon.
  std::vector<double> level_trace;
};

struct OrbitOptions {
  int horizon = 200;
  int n_max = 1'000'000;
  double pad = 1e-9;
};

/// Stable iff some n <= n_max has psi^m(K) inside the closure proxy of X_n for
/// all m <= horizon; reports the least such n. Domain taken from K.
OrbitReport check_stable_orbits(const SelfMap& psi, const CompactGrid& K,
                                const OrbitOptions& options = {});

enum class GrowthClass { Bounded, Exponential, Superexponential, Inconclusive };
std::string to_string(GrowthClass c);

struct GrowthOptions {
  double slope_tol = 1e-3;   // per step, log space
  double fit_tol = 1e-2;     // RMS of the log-linear fit
  double bound_factor = 10;  // max_m gamma_m / gamma_1
};

struct GrowthReport {
  std::string target;  // K-seminorm
  std::string source;  // L-seminorm
  std::vector<double> values;      // gamma_hat_m, m = 1..M
  std::vector<double> log_values;  // log gamma_hat_m (kept when values overflow)
  GrowthClass classification = GrowthClass::Inconclusive;
  double rate = 0.0;  // fitted slope; the exponential rate when classified so
  double fit_residual = 0.0;
  std::optional<EscapeEvidence> evidence;
};

/// Classification of a log-sequence by log-linear regression against m.
struct SequenceFit {
  GrowthClass classification = GrowthClass::Inconclusive;
  double slope = 0.0;
  double residual = 0.0;
};
SequenceFit classify_log_sequence(const std::vector<double>& log_values,
                                  const GrowthOptions& options = {});

/// gamma_hat_m = max_f ||C^m f||_K / ||f||_L over a finite basis. An orbit
/// leaving the domain, or leaving the region L discretizes, makes every
/// L-estimate impossible and is classified superexponential.
GrowthReport estimate_growth(const WCOperator& op, const std::vector<ScalarField>& basis,
                             const SeminormSpec& K, const SeminormSpec& L, int horizon,
                             const GrowthOptions& options = {});

struct PowerBoundedReport {
  OrbitReport orbit;
  bool weight_orbit_bounded = false;
  std::vector<double> weight_orbit_log_values;  // log ||C^m(w)||_K
  GrowthReport growth;
  /// Route "stable orbits and bounded weight orbit".
  bool power_bounded = false;
  /// Route "topologizable and bounded weight orbit".
  bool topologizable_route = false;
  /// Route "direct growth bounded".
  bool growth_route = false;
  bool consistent = false;
};

/// Runs the stable-orbit route, the topologizability route and the direct
/// growth route on the probe grid K. The source seminorm is the exhaustion
/// level enclosing the orbit of K (K itself when unstable).
PowerBoundedReport test_power_bounded_characterization(const WCOperator& op,
                                                       const std::vector<ScalarField>& basis,
                                                       const CompactGrid& K, int horizon,
                                                       const GrowthOptions& options = {});

struct ErgodicReport {
  bool converged = false;
  std::vector<Complex> limit_estimate;  // T_[n2] f on the probe
  double cauchy_defect = 0.0;           // absolute, max over window pairs
  std::optional<double> rate_estimate;  // p with |T_[n] f - T_[2n] f| ~ n^-p
  double scale = 1.0;                   // max(1, sup_probe |f|)
  double tol = 0.0;
  int n1 = 0;
  int n2 = 0;
  std::size_t family_size = 1;
};

/// Converged iff cauchy_defect < tol * max(1, sup_probe |f|): absolute for
/// fields of unit size, relative for larger ones.
ErgodicReport test_mean_ergodic(const WCOperator& op, const ScalarField& f,
                                const CompactGrid& probe, int n1, int n2, double tol);

/// As test_mean_ergodic with the defect maximized over a finite family, a
/// proxy for uniformity on bounded sets.
ErgodicReport test_uniform_mean_ergodic(const WCOperator& op,
                                        const std::vector<ScalarField>& family,
                                        const CompactGrid& probe, int n1, int n2, double tol);

struct DensenessReport {
  std::vector<double> density;  // m = 0..m_max
  std::vector<int> flagged;     // m with density < floor
  bool dense = true;
  double density_floor = 0.5;
};

/// Fraction of samples with w(psi^m(x)) != 0 for m = 0..m_max.
DensenessReport check_denseness_hypothesis(const ScalarField& w, const SelfMap& psi,
                                           const CompactGrid& samples, int m_max,
                                           double density_floor = 0.5);

}  // namespace wco
