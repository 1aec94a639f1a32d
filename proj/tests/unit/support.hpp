#pragma once

#include <memory>
#include <random>
#include <string>

#include "wco/wcomp.hpp"

namespace wco::testing {

inline Point pt(double a) { return Point::Constant(1, a); }
inline Point pt(double a, double b) {
  Point p(2);
  p << a, b;
  return p;
}

inline DomainPtr plane() { return std::make_shared<const Domain>(Domain::whole(2)); }
inline DomainPtr line() { return std::make_shared<const Domain>(Domain::whole(1)); }
inline DomainPtr unit_disk() { return std::make_shared<const Domain>(Domain::ball(Point::Zero(2), 1.0)); }

inline SpaceInstance space(SpaceInstance::Tag tag, DomainPtr domain) {
  SpaceInstance s;
  s.tag = tag;
  s.domain = std::move(domain);
  return s;
}

/// Field in z = x + iy over R^2.
inline ScalarField zf(const std::string& text) { return ScalarField::parse(text, {"x", "y"}); }

/// C_{w,psi} on C ~ R^2 from complex expressions.
inline WCOperator complex_op(const std::string& w, const std::string& psi, DomainPtr domain,
                             SpaceInstance::Tag tag = SpaceInstance::Tag::Holomorphic) {
  return WCOperator{zf(w), SelfMap::parse_complex(psi), space(tag, std::move(domain))};
}

/// C_{w,psi} on R^1 from expressions in x0.
inline WCOperator line_op(const std::string& w, const std::string& psi, DomainPtr domain = line()) {
  SpaceInstance s = space(SpaceInstance::Tag::Cr, std::move(domain));
  return WCOperator{ScalarField::parse(w, {"x0"}), SelfMap::parse({psi}, {"x0"}), s};
}

inline bool close(Complex a, Complex b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace wco::testing
