#include "wco/core.hpp"

#include <algorithm>
#include <sstream>

namespace wco {

namespace {

void fill_indices(int d, int pos, int remaining, MultiIndex& current,
                  std::vector<MultiIndex>& out) {
  if (pos == d - 1) {
    current[static_cast<std::size_t>(pos)] = remaining;
    out.push_back(current);
    return;
  }
  for (int a = remaining; a >= 0; --a) {
    current[static_cast<std::size_t>(pos)] = a;
    fill_indices(d, pos + 1, remaining - a, current, out);
  }
}

std::string describe_point(const Point& x) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

}  // namespace

std::vector<MultiIndex> indices_of_order(int d, int k) {
  std::vector<MultiIndex> out;
  if (d <= 0) return out;
  MultiIndex current(static_cast<std::size_t>(d), 0);
  fill_indices(d, 0, k, current, out);
  // fill_indices emits descending first coordinate; lexicographic ascending
  // is the reverse.
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<MultiIndex> indices_up_to(int d, int max_order) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= max_order; ++k) {
    auto level = indices_of_order(d, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::string to_string(const MultiIndex& alpha) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) os << (i ? "," : "") << alpha[i];
  os << ")";
  return os.str();
}

LeftDomain::LeftDomain(Point x, int iterate)
    : Error("iterate " + std::to_string(iterate) + " left the domain at " +
            describe_point(x)),
      point_(std::move(x)),
      iterate_(iterate) {}

StencilOutsideDomain::StencilOutsideDomain(Point x)
    : Error("finite-difference stencil leaves the domain at " + describe_point(x)),
      point_(std::move(x)) {}

NotInVariety::NotInVariety(Complex value)
    : Error("P(zeta) = (" + std::to_string(value.real()) + ", " +
            std::to_string(value.imag()) + ") is not zero"),
      value_(value) {}

SchemaError::SchemaError(std::string path, const std::string& what)
    : Error(path + ": " + what), path_(std::move(path)) {}

RangeError::RangeError(std::string path, const std::string& what)
    : Error(path + ": " + what), path_(std::move(path)) {}

}  // namespace wco
