#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wco {

using Complex = std::complex<double>;
using Point = Eigen::VectorXd;

/// Dense multi-index of length d. Ordered lexicographically.
using MultiIndex = std::vector<int>;

inline int order(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

inline MultiIndex unit_index(int d, int i) {
  MultiIndex e(static_cast<std::size_t>(d), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

inline MultiIndex operator+(MultiIndex a, const MultiIndex& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

/// alpha! = prod_i alpha_i!
inline double factorial(const MultiIndex& alpha) {
  double f = 1.0;
  for (int a : alpha)
    for (int k = 2; k <= a; ++k) f *= k;
  return f;
}

/// All multi-indices of length d with total order <= max_order, graded then
/// lexicographic.
std::vector<MultiIndex> indices_up_to(int d, int max_order);

/// All multi-indices of length d with total order exactly k, lexicographic.
std::vector<MultiIndex> indices_of_order(int d, int k);

std::string to_string(const MultiIndex& alpha);

// Errors ----------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterate psi^j(x) left the domain.
class LeftDomain : public Error {
 public:
  LeftDomain(Point x, int iterate);
  const Point& point() const { return point_; }
  int iterate() const { return iterate_; }

 private:
  Point point_;
  int iterate_;
};

/// A finite-difference stencil left the domain and no derivative oracle exists.
class StencilOutsideDomain : public Error {
 public:
  explicit StencilOutsideDomain(Point x);
  const Point& point() const { return point_; }

 private:
  Point point_;
};

/// zeta is not a characteristic zero of P.
class NotInVariety : public Error {
 public:
  explicit NotInVariety(Complex value);
  Complex value() const { return value_; }

 private:
  Complex value_;
};

/// The exponential series cannot be certified (no growth bound available).
class NoGrowthBound : public Error {
 public:
  using Error::Error;
};

class EmptyBasis : public Error {
 public:
  EmptyBasis() : Error("empty basis") {}
};

/// Malformed configuration; path() names the offending key.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class RangeError : public Error {
 public:
  RangeError(std::string path, const std::string& what);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace wco
