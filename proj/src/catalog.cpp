// Built-in scenarios, stored in the same JSON schema accepted from files.

#include "wco/scenarios.hpp"

namespace wco {

namespace {

constexpr const char* kCatalog = R"json([
  {
    "name": "contraction-on-disk",
    "description": "psi(z) = z/2 on the unit disk, unweighted; every orbit converges to 0",
    "space": {"tag": "holomorphic", "domain": {"kind": "ball", "center": [0, 0], "radius": 1}},
    "variables": ["x", "y"],
    "weight": "1",
    "symbol": {"complex": "z/2"},
    "test_fields": ["1", "z", "z^2"],
    "solutions": ["1", "z", "z^2"],
    "K": {"kind": "ball", "center": [0, 0], "radius": 0.75, "spacing": 0.1},
    "expected": {
      "stable": {"value": true, "provenance": "closed_form"},
      "power_bounded": {"value": true, "provenance": "closed_form"},
      "weight_orbit_bounded": {"value": true, "provenance": "closed_form"},
      "routes_agree": {"value": true, "provenance": "theorem_consequence"},
      "growth_class": {"value": "bounded", "provenance": "closed_form"},
      "mean_ergodic": {"value": true, "provenance": "closed_form",
                       "params": {"limits": ["1", "0", "0"], "window": [500, 1000], "tol": 1e-3}},
      "uniform_mean_ergodic": {"value": true, "provenance": "closed_form",
                               "params": {"window": [500, 1000], "tol": 2e-3}},
      "dense": {"value": true, "provenance": "construction"},
      "closure": {"value": true, "provenance": "closed_form", "params": {"tol": 1e-8}},
      "semigroup": {"value": "certified", "provenance": "closed_form", "tolerance": 1e-9,
                    "params": {"t": 2, "field": 1, "eps": 1e-10,
                               "checks": [{"at": [0.5, 0], "value": [1.3591409142295225, 0]}]}},
      "semigroup_law": {"value": true, "provenance": "closed_form", "params": {"tol": 1e-8}},
      "generator": {"value": true, "provenance": "closed_form", "params": {"tol": 1e-3}}
    }
  },
  {
    "name": "rotation",
    "description": "psi(z) = -z on the plane; period-two orbits, Cesaro limit is the even part",
    "space": {"tag": "holomorphic", "domain": {"kind": "whole", "dim": 2}},
    "variables": ["x", "y"],
    "weight": "1",
    "symbol": {"complex": "-z"},
    "test_fields": ["z", "z^2", "z^3"],
    "K": {"kind": "ball", "center": [0, 0], "radius": 0.75, "spacing": 0.1},
    "expected": {
      "stable": {"value": true, "provenance": "closed_form"},
      "power_bounded": {"value": true, "provenance": "closed_form"},
      "routes_agree": {"value": true, "provenance": "theorem_consequence"},
      "growth_class": {"value": "bounded", "provenance": "closed_form"},
      "mean_ergodic": {"value": true, "provenance": "closed_form",
                       "params": {"limits": ["0", "z^2", "0"], "window": [500, 1000], "tol": 1e-2}},
      "uniform_mean_ergodic": {"value": true, "provenance": "closed_form",
                               "params": {"window": [500, 1000], "tol": 1e-2}},
      "semigroup": {"value": "certified", "provenance": "closed_form", "tolerance": 1e-9,
                    "params": {"t": 1, "field": 0, "eps": 1e-10,
                               "checks": [{"at": [0.5, 0], "value": [0.18393972058572117, 0]}]}},
      "semigroup_law": {"value": true, "provenance": "brute_force", "params": {"tol": 1e-8}}
    }
  },
  {
    "name": "identity",
    "description": "psi = id, w = 1 on C(R^2)",
    "space": {"tag": "continuous", "domain": {"kind": "whole", "dim": 2}},
    "weight": "1",
    "symbol": {"components": ["x0", "x1"]},
    "test_fields": ["1", "x0", "x0*x1"],
    "K": {"kind": "box", "lower": [-1, -1], "upper": [1, 1], "spacing": 0.25},
    "expected": {
      "stable": {"value": true, "provenance": "closed_form"},
      "power_bounded": {"value": true, "provenance": "closed_form"},
      "routes_agree": {"value": true, "provenance": "theorem_consequence"},
      "growth_class": {"value": "bounded", "provenance": "closed_form"},
      "mean_ergodic": {"value": true, "provenance": "closed_form",
                       "params": {"limits": ["1", "x0", "x0*x1"], "window": [500, 1000], "tol": 1e-12}},
      "dense": {"value": true, "provenance": "construction"},
      "semigroup": {"value": "certified", "provenance": "closed_form", "tolerance": 1e-9,
                    "params": {"t": 1, "field": 1, "eps": 1e-10,
                               "checks": [{"at": [0.5, 0.5], "value": [1.3591409142295225, 0]}]}},
      "generator": {"value": true, "provenance": "closed_form", "params": {"tol": 1e-3, "field": 0}}
    }
  },
  {
    "name": "dilation-2",
    "description": "psi(z) = 2z on the plane; orbits of the unit disk escape every compact set",
    "space": {"tag": "holomorphic", "domain": {"kind": "whole", "dim": 2}},
    "variables": ["x", "y"],
    "weight": "1",
    "symbol": {"complex": "2*z"},
    "test_fields": ["1", "z"],
    "K": {"kind": "ball", "center": [0, 0], "radius": 1, "spacing": 0.1},
    "expected": {
      "stable": {"value": false, "provenance": "closed_form"},
      "monotone_escape": {"value": true, "provenance": "closed_form"},
      "power_bounded": {"value": false, "provenance": "closed_form"},
      "routes_agree": {"value": true, "provenance": "theorem_consequence"},
      "growth_class": {"value": "superexponential", "provenance": "closed_form"},
      "semigroup": {"value": "refused", "provenance": "theorem_consequence", "params": {"t": 1}}
    }
  },
  {
    "name": "weighted-monomial-on-disk",
    "description": "w(z) = z, psi = id on the unit disk; C^m f = z^m f",
    "space": {"tag": "holomorphic", "domain": {"kind": "ball", "center": [0, 0], "radius": 1}},
    "variables": ["x", "y"],
    "weight": "z",
    "symbol": {"complex": "z"},
    "test_fields": ["1", "z", "z^2"],
    "K": {"kind": "ball", "center": [0, 0], "radius": 0.75, "spacing": 0.1},
    "expected": {
      "stable": {"value": true, "provenance": "closed_form"},
      "power_bounded": {"value": true, "provenance": "closed_form"},
      "weight_orbit_bounded": {"value": true, "provenance": "closed_form"},
      "routes_agree": {"value": true, "provenance": "theorem_consequence"},
      "growth_class": {"value": "bounded", "provenance": "closed_form"},
      "mean_ergodic": {"value": true, "provenance": "closed_form",
                       "params": {"limits": ["0", "0", "0"], "window": [500, 1000], "tol": 1e-2}},
      "dense": {"value": true, "provenance": "construction"},
      "semigroup": {"value": "certified", "provenance": "closed_form", "tolerance": 1e-9,
                    "params": {"t": 1, "field": 0, "eps": 1e-10,
                               "checks": [{"at": [0.5, 0], "value": [1.6487212707001282, 0]}]}},
      "semigroup_law": {"value": true, "provenance": "closed_form", "params": {"tol": 1e-8}},
      "generator": {"value": true, "provenance": "closed_form", "params": {"tol": 1e-3}}
    }
  },
  {
    "name": "exponential-weight-on-line",
    "description": "w(x) = exp(x), psi = id on C(R); growth exactly exp(m) on [-1, 1]",
    "space": {"tag": "continuous", "domain": {"kind": "whole", "dim": 1}},
    "weight": "exp(x0)",
    "symbol": {"components": ["x0"]},
    "test_fields": ["1", "x0"],
    "K": {"kind": "box", "lower": [-1], "upper": [1], "spacing": 0.05},
    "expected": {
      "stable": {"value": true, "provenance": "closed_form"},
      "growth_class": {"value": "exponential", "provenance": "closed_form"},
      "growth_rate": {"value": 1.0, "provenance": "closed_form", "tolerance": 1e-6},
      "weight_orbit_bounded": {"value": false, "provenance": "closed_form"},
      "power_bounded": {"value": false, "provenance": "closed_form"},
      "routes_agree": {"value": true, "provenance": "theorem_consequence"},
      "semigroup": {"value": "certified", "provenance": "closed_form", "tolerance": 1e-9,
                    "params": {"t": 1, "field": 0, "eps": 1e-10,
                               "checks": [{"at": [0], "value": [2.718281828459045, 0]}]}},
      "semigroup_law": {"value": true, "provenance": "closed_form", "params": {"tol": 1e-8}},
      "generator": {"value": true, "provenance": "closed_form", "params": {"tol": 1e-3}}
    }
  },
  {
    "name": "harmonic-rotation",
    "description": "rotation by pi/4 on harmonic functions of R^2",
    "space": {"tag": "pde_kernel", "domain": {"kind": "whole", "dim": 2},
              "operator": {"name": "laplace", "dim": 2}},
    "weight": "1",
    "symbol": {"components": ["cos(pi/4)*x0 - sin(pi/4)*x1", "sin(pi/4)*x0 + cos(pi/4)*x1"]},
    "test_fields": ["1", "x0", "x0^2 - x1^2", "x0*x1"],
    "solutions": ["1", "x0", "x0^2 - x1^2", "x0*x1", "exp(x0)*cos(x1)"],
    "K": {"kind": "ball", "center": [0, 0], "radius": 1, "spacing": 0.125},
    "expected": {
      "stable": {"value": true, "provenance": "closed_form"},
      "power_bounded": {"value": true, "provenance": "closed_form"},
      "routes_agree": {"value": true, "provenance": "theorem_consequence"},
      "growth_class": {"value": "bounded", "provenance": "closed_form"},
      "mean_ergodic": {"value": true, "provenance": "closed_form",
                       "params": {"limits": ["1", "0", "0", "0"], "window": [500, 1000], "tol": 2e-2}},
      "closure": {"value": true, "provenance": "closed_form", "params": {"tol": 1e-8}}
    }
  },
  {
    "name": "heat-parabolic-rescaling",
    "description": "psi(t, x) = (t/4, x/2), w = 1 on the kernel of the heat operator",
    "space": {"tag": "pde_kernel", "domain": {"kind": "whole", "dim": 2},
              "operator": {"name": "heat", "space_dim": 1}},
    "variables": ["t", "x"],
    "weight": "1",
    "symbol": {"components": ["t/4", "x/2"]},
    "test_fields": ["1", "x", "x^2 + 2*t", "exp(t + x)"],
    "K": {"kind": "box", "lower": [-1, -1], "upper": [1, 1], "spacing": 0.1},
    "expected": {
      "heat_invariance": {"value": true, "provenance": "hand_check", "params": {"tol": 1e-10}},
      "closure": {"value": true, "provenance": "closed_form", "params": {"tol": 1e-8}},
      "stable": {"value": true, "provenance": "closed_form"},
      "power_bounded": {"value": true, "provenance": "closed_form"},
      "routes_agree": {"value": true, "provenance": "theorem_consequence"},
      "growth_class": {"value": "bounded", "provenance": "closed_form"}
    }
  },
  {
    "name": "heat-swap",
    "description": "psi(t, x) = (x, t): exchanging time and space does not preserve caloric functions",
    "space": {"tag": "pde_kernel", "domain": {"kind": "whole", "dim": 2},
              "operator": {"name": "heat", "space_dim": 1}},
    "variables": ["t", "x"],
    "weight": "1",
    "symbol": {"components": ["x", "t"]},
    "test_fields": ["1", "x"],
    "K": {"kind": "box", "lower": [-1, -1], "upper": [1, 1], "spacing": 0.25},
    "assumption_flags": {"kernel_b": false},
    "expected": {
      "heat_invariance": {"value": false, "provenance": "hand_check", "params": {"tol": 1e-10}},
      "invariance_residuals": {"value": {"c_time": 1.0}, "provenance": "hand_check", "tolerance": 1e-10},
      "closure": {"value": false, "provenance": "closed_form", "params": {"tol": 1e-6}},
      "stable": {"value": true, "provenance": "closed_form"}
    }
  },
  {
    "name": "smooth-contraction-on-line",
    "description": "w(x) = exp(-x), psi(x) = x/2 on C^infinity(R)",
    "space": {"tag": "cr", "r": -1, "domain": {"kind": "whole", "dim": 1}},
    "weight": "exp(-x0)",
    "symbol": {"components": ["x0/2"]},
    "test_fields": ["x0", "x0^2", "sin(x0)"],
    "K": {"kind": "box", "lower": [-1], "upper": [1], "spacing": 0.1},
    "expected": {
      "stable": {"value": true, "provenance": "closed_form"},
      "cr_bound": {"value": true, "provenance": "closed_form", "params": {"l_max": 3, "m_max": 10}},
      "expansion_matches_fd": {"value": true, "provenance": "brute_force",
                               "params": {"order_max": 3, "m_max": 3}}
    }
  },
  {
    "name": "smooth-rotation",
    "description": "rotation by pi/4 on C^infinity(R^2)",
    "space": {"tag": "cr", "r": -1, "domain": {"kind": "whole", "dim": 2}},
    "weight": "1",
    "symbol": {"components": ["cos(pi/4)*x0 - sin(pi/4)*x1", "sin(pi/4)*x0 + cos(pi/4)*x1"]},
    "test_fields": ["x0*x1", "x0^2", "exp(x0)*sin(x1)"],
    "K": {"kind": "ball", "center": [0, 0], "radius": 1, "spacing": 0.25},
    "expected": {
      "stable": {"value": true, "provenance": "closed_form"},
      "cr_bound": {"value": true, "provenance": "closed_form", "params": {"l_max": 3, "m_max": 10}},
      "expansion_matches_fd": {"value": true, "provenance": "brute_force",
                               "params": {"order_max": 3, "m_max": 3}}
    }
  },
  {
    "name": "smooth-quadratic-contraction",
    "description": "psi(x) = (x + x^2)/4 on C^infinity(-1, 1), a nonlinear contraction",
    "space": {"tag": "cr", "r": -1, "domain": {"kind": "ball", "center": [0], "radius": 1}},
    "weight": "1 + x0/2",
    "symbol": {"components": ["(x0 + x0^2)/4"]},
    "test_fields": ["x0^3", "exp(x0)"],
    "K": {"kind": "box", "lower": [-0.5], "upper": [0.5], "spacing": 0.05},
    "expected": {
      "stable": {"value": true, "provenance": "closed_form"},
      "cr_bound": {"value": true, "provenance": "closed_form", "params": {"l_max": 3, "m_max": 10}},
      "expansion_matches_fd": {"value": true, "provenance": "brute_force",
                               "params": {"order_max": 3, "m_max": 3}}
    }
  },
  {
    "name": "zero-weight",
    "description": "w = 0: the nonvanishing set of the weight is empty",
    "space": {"tag": "continuous", "domain": {"kind": "whole", "dim": 1}},
    "weight": "0",
    "symbol": {"components": ["x0/2"]},
    "test_fields": ["1"],
    "K": {"kind": "box", "lower": [-1], "upper": [1], "spacing": 0.1},
    "assumption_flags": {"denseness_c": false},
    "expected": {
      "dense": {"value": false, "provenance": "construction"},
      "stable": {"value": true, "provenance": "closed_form"}
    }
  },
  {
    "name": "cauchy-riemann-closure",
    "description": "w(z) = z, psi(z) = z^2 on the unit disk preserve holomorphy",
    "space": {"tag": "holomorphic", "domain": {"kind": "ball", "center": [0, 0], "radius": 1}},
    "variables": ["x", "y"],
    "weight": "z",
    "symbol": {"complex": "z^2"},
    "test_fields": ["1", "z", "z^2"],
    "solutions": ["1", "z", "z^2"],
    "K": {"kind": "ball", "center": [0, 0], "radius": 0.75, "spacing": 0.1},
    "expected": {
      "closure": {"value": true, "provenance": "closed_form", "params": {"tol": 1e-8}},
      "stable": {"value": true, "provenance": "closed_form"},
      "power_bounded": {"value": true, "provenance": "closed_form"},
      "routes_agree": {"value": true, "provenance": "theorem_consequence"},
      "dense": {"value": true, "provenance": "construction", "params": {"m_max": 4}}
    }
  },
  {
    "name": "conjugate-weight",
    "description": "w(z) = conj(z) leaves the holomorphic functions",
    "space": {"tag": "holomorphic", "domain": {"kind": "ball", "center": [0, 0], "radius": 1}},
    "variables": ["x", "y"],
    "weight": "conj(z)",
    "symbol": {"complex": "z"},
    "test_fields": ["1"],
    "solutions": ["1"],
    "K": {"kind": "ball", "center": [0, 0], "radius": 0.75, "spacing": 0.25},
    "assumption_flags": {"kernel_b": false},
    "expected": {
      "closure": {"value": false, "provenance": "closed_form", "params": {"tol": 1e-6}},
      "closure_residual": {"value": 1.0, "provenance": "closed_form", "tolerance": 1e-10}
    }
  }
])json";

}  // namespace

const Json& builtin_catalog_json() {
  static const Json j = Json::parse(kCatalog);
  return j;
}

const std::vector<Scenario>& builtin_catalog() {
  static const std::vector<Scenario> all = [] {
    std::vector<Scenario> out;
    const Json& j = builtin_catalog_json();
    for (std::size_t i = 0; i < j.size(); ++i)
      out.push_back(parse_scenario(j[i], "catalog[" + std::to_string(i) + "]"));
    return out;
  }();
  return all;
}

}  // namespace wco
