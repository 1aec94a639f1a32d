#include "wco/smoothcalc.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace wco {

namespace {

void canonicalize(ExpansionTerm& t) { std::sort(t.factors.begin(), t.factors.end()); }

std::vector<ExpansionTerm> merge_terms(std::vector<ExpansionTerm> terms) {
  for (auto& t : terms) canonicalize(t);
  std::vector<ExpansionTerm> out;
  std::map<std::pair<MultiIndex, std::vector<ExpansionFactor>>, std::size_t> seen;
  for (auto& t : terms) {
    auto key = std::make_pair(t.beta, t.factors);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), out.size());
      out.push_back(std::move(t));
    } else {
      out[it->second].multiplicity += t.multiplicity;
    }
  }
  return out;
}

// One differentiation step d/dx_i applied to a term list.
std::vector<ExpansionTerm> differentiate(const std::vector<ExpansionTerm>& terms, int i, int d) {
  const MultiIndex ei = unit_index(d, i);
  std::vector<ExpansionTerm> out;
  for (const auto& t : terms) {
    // (d^beta f) o psi^m picks up sum_c (d^{beta+e_c} f) o psi^m * d_i (psi^m)_c.
    for (int c = 0; c < d; ++c) {
      ExpansionTerm n = t;
      n.beta = n.beta + unit_index(d, c);
      n.factors.push_back({ei, c});
      out.push_back(std::move(n));
    }
    // Product rule on the factor product.
    for (std::size_t p = 0; p < t.factors.size(); ++p) {
      ExpansionTerm n = t;
      n.factors[p].gamma = n.factors[p].gamma + ei;
      out.push_back(std::move(n));
    }
  }
  return out;
}

double ipow(double b, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

bool all_exact(std::initializer_list<const ScalarField*> fields) {
  for (const auto* f : fields)
    if (!f->has_oracle()) return false;
  return true;
}

Point iterate_point(const WCOperator& op, Point y, int m) {
  for (int j = 1; j <= m; ++j) {
    y = op.symbol(y);
    if (!y.allFinite() || (op.domain() && !op.domain()->contains(y))) throw LeftDomain(y, j);
  }
  return y;
}

}  // namespace

long ExpansionTable::total_terms() const {
  long s = 0;
  for (const auto& t : terms) s += t.multiplicity;
  return s;
}

ExpansionTable build_expansion(const MultiIndex& alpha, int d, bool merge) {
  if (d < 1 || static_cast<int>(alpha.size()) != d)
    throw Error("multi-index " + to_string(alpha) + " does not match dimension");
  if (std::any_of(alpha.begin(), alpha.end(), [](int a) { return a < 0; }))
    throw Error("negative multi-index entry");
  const int s = order(alpha);
  if (s < 1) throw Error("expansion needs |alpha| >= 1");

  std::vector<int> steps;
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < alpha[static_cast<std::size_t>(i)]; ++k) steps.push_back(i);

  std::vector<ExpansionTerm> terms;
  for (int c = 0; c < d; ++c)
    terms.push_back({unit_index(d, c), {{unit_index(d, steps[0]), c}}, 1});
  for (std::size_t q = 1; q < steps.size(); ++q) {
    terms = differentiate(terms, steps[q], d);
    if (merge) terms = merge_terms(std::move(terms));
  }

  ExpansionTable table;
  table.alpha = alpha;
  table.dim = d;
  table.merged = merge;
  table.terms = std::move(terms);
  long max_n = 0;
  for (const auto& t : table.terms) max_n = std::max(max_n, table.n_beta[t.beta] += t.multiplicity);
  table.B_constant = (d == 1 ? s : ipow(d, s)) * static_cast<double>(max_n);
  return table;
}

double expansion_constant(int l, int d) {
  if (l < 0 || d < 1) throw Error("expansion constant needs l >= 0, d >= 1");
  if (l == 0) return 1.0;
  static std::mutex mu;
  static std::map<std::pair<int, int>, double> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find({l, d}); it != cache.end()) return it->second;
  double M = 1.0;
  for (const auto& alpha : indices_up_to(d, l)) {
    if (order(alpha) == 0) continue;
    const ExpansionTable t = build_expansion(alpha, d, true);
    M = std::max({M, t.B_constant, static_cast<double>(t.total_terms())});
  }
  cache[{l, d}] = M;
  return M;
}

Complex eval_expansion(const ExpansionTable& table, const WCOperator& op, const ScalarField& f,
                       int m, const Point& x) {
  if (m < 1) throw Error("eval_expansion needs m >= 1");
  const int s = order(table.alpha);
  const Domain* X = op.domain();
  const WCOperator plain = WCOperator::composition(op.symbol, op.space);

  const Jet jf = derivative_jet(f, iterate_point(op, x, m), s, X);
  std::vector<Jet> jc;
  for (int c = 0; c < table.dim; ++c)
    jc.push_back(derivative_jet(apply_iterate(plain, op.symbol.component(c), m - 1), x, s, X));

  Complex total(0.0);
  for (const auto& t : table.terms) {
    Complex prod = jf.derivative(t.beta);
    for (const auto& fac : t.factors)
      prod *= jc[static_cast<std::size_t>(fac.component)].derivative(fac.gamma);
    total += static_cast<double>(t.multiplicity) * prod;
  }
  return total;
}

double fd_slack_for(bool exact) { return exact ? 1e-10 : 1e-4; }

CrBound cr_seminorm_bound(const WCOperator& op, const ScalarField& f, int l,
                          const CompactGrid& K, int m) {
  if (m < 1) throw Error("bound needs m >= 1");
  const WCOperator plain = WCOperator::composition(op.symbol, op.space);
  const int d = op.dim();
  CrBound b;
  b.M_l = expansion_constant(l, d);

  const ScalarField g = apply_iterate(plain, f, m);
  b.lhs = eval_seminorm(SeminormSpec::cr(K, l), g);
  b.source_norm = eval_seminorm(SeminormSpec::cr(map_grid(K, op.symbol, m), l), f);
  b.exact = g.has_oracle() && f.has_oracle();
  for (int c = 0; c < d; ++c) {
    const ScalarField pc = apply_iterate(plain, op.symbol.component(c), m - 1);
    b.exact = b.exact && pc.has_oracle();
    b.symbol_factor = std::max(b.symbol_factor, eval_seminorm(SeminormSpec::cr(K, l), pc));
  }
  b.rhs = b.source_norm * b.M_l * ipow(b.symbol_factor, l);
  b.fd_slack = fd_slack_for(b.exact);
  b.holds = b.lhs <= b.rhs * (1.0 + b.fd_slack);
  return b;
}

CrBound weighted_cr_growth(const WCOperator& op, const ScalarField& f, int l,
                           const CompactGrid& K, const std::optional<CompactGrid>& L, int m) {
  if (m < 1) throw Error("bound needs m >= 1");
  const WCOperator plain = WCOperator::composition(op.symbol, op.space);
  const int d = op.dim();

  std::vector<CompactGrid> images;
  for (int j = 0; j <= m; ++j) images.push_back(map_grid(K, op.symbol, j));
  CompactGrid source;
  if (L) {
    for (std::size_t j = 0; j < images.size(); ++j)
      for (std::size_t k = 0; k < images[j].size(); ++k)
        if (!L->covers(images[j].point(k)))
          throw Error("source grid does not cover psi^" + std::to_string(j) + "(K)");
    source = *L;
  } else {
    source = images[0];
    for (std::size_t j = 1; j < images.size(); ++j) source = source.merged_with(images[j]);
  }

  CrBound b;
  b.M_l = expansion_constant(l, d);
  const ScalarField g = apply_iterate(op, f, m);
  const ScalarField wm = apply_iterate(op, op.weight, m - 1);
  b.lhs = eval_seminorm(SeminormSpec::cr(K, l), g);
  b.weight_factor = eval_seminorm(SeminormSpec::cr(K, l), wm);
  b.source_norm = eval_seminorm(SeminormSpec::cr(source, l), f);
  b.exact = all_exact({&g, &wm, &f});
  for (int c = 0; c < d; ++c) {
    const ScalarField pc = apply_iterate(plain, op.symbol.component(c), m - 1);
    b.exact = b.exact && pc.has_oracle();
    b.symbol_factor = std::max(b.symbol_factor, eval_seminorm(SeminormSpec::cr(K, l), pc));
  }
  b.rhs = ipow(2.0, l) * b.M_l * b.weight_factor * ipow(b.symbol_factor, l) * b.source_norm;
  b.fd_slack = fd_slack_for(b.exact);
  b.holds = b.lhs <= b.rhs * (1.0 + b.fd_slack);
  return b;
}

}  // namespace wco
