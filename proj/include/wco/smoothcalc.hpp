#pragma once

// Derivatives of iterated compositions: the term table
//   d^alpha (C^m_psi f) = sum_beta ((d^beta f) o psi^m)
//                         * sum_k prod_j d^gamma(beta,k,j) (C^{m-1}_psi psi_c(beta,k,j))
// generated by differentiating term lists one unit index at a time, and the
// C^r seminorm bounds that follow from it.

#include <map>
#include <optional>
#include <vector>

#include "wco/funcspace.hpp"
#include "wco/wcomp.hpp"

namespace wco {

struct ExpansionFactor {
  MultiIndex gamma;
  int component = 0;

  friend auto operator<=>(const ExpansionFactor&, const ExpansionFactor&) = default;
};

struct ExpansionTerm {
  MultiIndex beta;
  std::vector<ExpansionFactor> factors;  // |beta| of them
  long multiplicity = 1;
};

struct ExpansionTable {
  MultiIndex alpha;
  int dim = 0;
  bool merged = false;
  std::vector<ExpansionTerm> terms;
  /// n(beta): number of (unmerged) terms sharing beta.
  std::map<MultiIndex, long> n_beta;
  /// |alpha| max n(beta) for d = 1, d^|alpha| max n(beta) for d > 1.
  double B_constant = 0.0;

  /// Sum of multiplicities, i.e. the unmerged term count.
  long total_terms() const;
};

/// Generates the table for alpha (|alpha| >= 1). Unit indices are added in
/// ascending coordinate order; with `merge`, terms with equal beta and equal
/// factor multisets are combined.
ExpansionTable build_expansion(const MultiIndex& alpha, int d, bool merge = true);

/// Value of the term sum at x for the unweighted iterate C^m_psi f (m >= 1).
/// The weight of `op` is ignored.
Complex eval_expansion(const ExpansionTable& table, const WCOperator& op, const ScalarField& f,
                       int m, const Point& x);

/// max over 1 <= |alpha| <= l of max(B_|alpha|, total term count); 1 for l = 0.
double expansion_constant(int l, int d);

struct CrBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double M_l = 1.0;
  double source_norm = 0.0;     // ||f||_{l, psi^m(K)} or ||f||_{l, L}
  double symbol_factor = 1.0;   // max_c {1, ||C^{m-1}_psi psi_c||_{l,K}}
  double weight_factor = 1.0;   // ||C^{m-1}_{w,psi} w||_{l,K} (weighted only)
  bool exact = false;           // every derivative from an oracle
  double fd_slack = 0.0;
  bool holds = false;           // lhs <= rhs (1 + fd_slack)
};

double fd_slack_for(bool exact);

/// ||C^m_psi f||_{l,K} against ||f||_{l,psi^m(K)} M_l max_c{1, ||C^{m-1}_psi psi_c||_{l,K}}^l.
CrBound cr_seminorm_bound(const WCOperator& op, const ScalarField& f, int l,
                          const CompactGrid& K, int m);

/// ||C^m_{w,psi} f||_{l,K} against
///   2^l M_l ||C^{m-1}_{w,psi} w||_{l,K} max_c{1, ||C^{m-1}_psi psi_c||_{l,K}}^l ||f||_{l,L}.
/// L defaults to the union of psi^j(K), j <= m; a supplied L must cover them.
CrBound weighted_cr_growth(const WCOperator& op, const ScalarField& f, int l,
                           const CompactGrid& K, const std::optional<CompactGrid>& L, int m);

}  // namespace wco
