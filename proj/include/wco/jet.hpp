#pragma once

// Truncated multivariate Taylor polynomials ("jets"). A jet of order L in d
// real variables carries the coefficients of all monomials eps^alpha with
// |alpha| <= L; arithmetic truncates at L. Evaluating an expression on seeded
// jets yields exact partial derivatives up to order L (up to rounding).

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <type_traits>
#include <vector>

#include "wco/core.hpp"

namespace wco {

struct JetLayout {
  struct Product {
    int lhs;
    int rhs;
    int out;
  };

  int dim = 0;
  int order = 0;
  std::vector<MultiIndex> monomials;  // graded lexicographic, monomials[0] = 0
  std::vector<int> degree;
  std::vector<double> factorials;     // alpha! per monomial
  std::map<MultiIndex, int> index;
  std::vector<Product> products;      // all pairs with degree sum <= order

  std::size_t size() const { return monomials.size(); }
  int find(const MultiIndex& alpha) const {
    auto it = index.find(alpha);
    return it == index.end() ? -1 : it->second;
  }

  /// Shared, immutable layout for (dim, order). Thread safe.
  static std::shared_ptr<const JetLayout> get(int dim, int order);
};

template <class Scalar>
class TaylorJet {
 public:
  using LayoutPtr = std::shared_ptr<const JetLayout>;

  TaylorJet() = default;
  TaylorJet(LayoutPtr layout, Scalar constant)
      : layout_(std::move(layout)), c_(layout_->size(), Scalar(0)) {
    c_[0] = constant;
  }

  /// x_i + eps_i evaluated at `at`.
  static TaylorJet variable(const LayoutPtr& layout, int i, Scalar at) {
    TaylorJet j(layout, at);
    if (layout->order >= 1)
      j.c_[static_cast<std::size_t>(layout->find(unit_index(layout->dim, i)))] = Scalar(1);
    return j;
  }

  const LayoutPtr& layout() const { return layout_; }
  std::size_t size() const { return c_.size(); }
  Scalar value() const { return c_[0]; }
  Scalar& operator[](std::size_t k) { return c_[k]; }
  const Scalar& operator[](std::size_t k) const { return c_[k]; }

  Scalar coefficient(const MultiIndex& alpha) const {
    const int k = layout_->find(alpha);
    return k < 0 ? Scalar(0) : c_[static_cast<std::size_t>(k)];
  }
  /// d^alpha at the expansion point: coefficient * alpha!.
  Scalar derivative(const MultiIndex& alpha) const {
    const int k = layout_->find(alpha);
    if (k < 0) return Scalar(0);
    return c_[static_cast<std::size_t>(k)] * layout_->factorials[static_cast<std::size_t>(k)];
  }

  TaylorJet& operator+=(const TaylorJet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  TaylorJet& operator-=(const TaylorJet& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  TaylorJet& operator*=(Scalar s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  TaylorJet& operator+=(Scalar s) {
    c_[0] += s;
    return *this;
  }

  friend TaylorJet operator+(TaylorJet a, const TaylorJet& b) { return a += b; }
  friend TaylorJet operator-(TaylorJet a, const TaylorJet& b) { return a -= b; }
  friend TaylorJet operator-(TaylorJet a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend TaylorJet operator*(TaylorJet a, Scalar s) { return a *= s; }
  friend TaylorJet operator*(Scalar s, TaylorJet a) { return a *= s; }
  friend TaylorJet operator+(TaylorJet a, Scalar s) { return a += s; }

  friend TaylorJet operator*(const TaylorJet& a, const TaylorJet& b) {
    TaylorJet out(a.layout_, Scalar(0));
    for (const auto& p : a.layout_->products)
      out.c_[static_cast<std::size_t>(p.out)] +=
          a.c_[static_cast<std::size_t>(p.lhs)] * b.c_[static_cast<std::size_t>(p.rhs)];
    return out;
  }

  friend TaylorJet operator/(const TaylorJet& a, const TaylorJet& b) {
    return a * reciprocal(b);
  }

  /// g(u) from the derivatives g^(k)(u_0), k = 0..order.
  TaylorJet compose(const std::vector<Scalar>& derivs) const {
    TaylorJet delta = *this;
    delta.c_[0] = Scalar(0);
    // Horner in delta: sum_k derivs[k]/k! delta^k
    const int L = layout_->order;
    double fact = 1.0;
    for (int k = 2; k <= L; ++k) fact *= k;
    TaylorJet acc(layout_, derivs[static_cast<std::size_t>(L)] / fact);
    for (int k = L - 1; k >= 0; --k) {
      fact /= (k + 1);
      acc = acc * delta;
      acc.c_[0] += derivs[static_cast<std::size_t>(k)] / fact;
    }
    return acc;
  }

  friend TaylorJet reciprocal(const TaylorJet& a) {
    const int L = a.layout_->order;
    std::vector<Scalar> d(static_cast<std::size_t>(L + 1));
    const Scalar u = a.c_[0];
    Scalar pw = Scalar(1) / u;
    double sign = 1.0, fact = 1.0;
    for (int k = 0; k <= L; ++k) {
      d[static_cast<std::size_t>(k)] = sign * fact * pw;
      pw /= u;
      sign = -sign;
      fact *= (k + 1);
    }
    return a.compose(d);
  }

  friend TaylorJet exp(const TaylorJet& a) {
    const Scalar e = std::exp(a.c_[0]);
    return a.compose(std::vector<Scalar>(static_cast<std::size_t>(a.layout_->order + 1), e));
  }

  friend TaylorJet log(const TaylorJet& a) {
    const int L = a.layout_->order;
    std::vector<Scalar> d(static_cast<std::size_t>(L + 1));
    const Scalar u = a.c_[0];
    d[0] = std::log(u);
    Scalar pw = Scalar(1) / u;
    double sign = 1.0, fact = 1.0;
    for (int k = 1; k <= L; ++k) {
      d[static_cast<std::size_t>(k)] = sign * fact * pw;
      pw /= u;
      sign = -sign;
      fact *= k;
    }
    return a.compose(d);
  }

  friend TaylorJet sin(const TaylorJet& a) {
    const Scalar s = std::sin(a.c_[0]), c = std::cos(a.c_[0]);
    const Scalar cycle[4] = {s, c, -s, -c};
    std::vector<Scalar> d(static_cast<std::size_t>(a.layout_->order + 1));
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = cycle[k % 4];
    return a.compose(d);
  }

  friend TaylorJet cos(const TaylorJet& a) {
    const Scalar s = std::sin(a.c_[0]), c = std::cos(a.c_[0]);
    const Scalar cycle[4] = {c, -s, -c, s};
    std::vector<Scalar> d(static_cast<std::size_t>(a.layout_->order + 1));
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = cycle[k % 4];
    return a.compose(d);
  }

  /// u^p for a constant exponent p (principal branch).
  friend TaylorJet pow(const TaylorJet& a, Scalar p) {
    const int L = a.layout_->order;
    std::vector<Scalar> d(static_cast<std::size_t>(L + 1));
    const Scalar u = a.c_[0];
    Scalar falling = Scalar(1);
    for (int k = 0; k <= L; ++k) {
      d[static_cast<std::size_t>(k)] = falling * std::pow(u, p - Scalar(k));
      falling *= (p - Scalar(k));
    }
    return a.compose(d);
  }

  /// u^n by repeated squaring; exact for polynomial inputs.
  friend TaylorJet pow(const TaylorJet& a, int n) {
    if (n < 0) return reciprocal(pow(a, -n));
    TaylorJet result(a.layout_, Scalar(1));
    TaylorJet base = a;
    while (n > 0) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return result;
  }

  friend TaylorJet conj(TaylorJet a) {
    if constexpr (!std::is_floating_point_v<Scalar>)
      for (auto& v : a.c_) v = std::conj(v);
    return a;
  }
  friend TaylorJet real(TaylorJet a) {
    if constexpr (!std::is_floating_point_v<Scalar>)
      for (auto& v : a.c_) v = Scalar(v.real());
    return a;
  }
  friend TaylorJet imag(TaylorJet a) {
    if constexpr (!std::is_floating_point_v<Scalar>)
      for (auto& v : a.c_) v = Scalar(v.imag());
    else
      for (auto& v : a.c_) v = Scalar(0);
    return a;
  }

 private:
  LayoutPtr layout_;
  std::vector<Scalar> c_;
};

using Jet = TaylorJet<Complex>;

/// Jets for x_i + eps_i, i = 0..d-1, at x, truncated at `order`.
std::vector<Jet> seed_jets(const Point& x, int order);

}  // namespace wco
