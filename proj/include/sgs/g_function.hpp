#pragma once

// Scalar generator g(v1, v3, v4) of the potential-derived closure family,
// with the sufficient conditions for positive total dissipation:
//   1. (v3, v4) |-> g(v1, v3, v4) convex on the admissible domain,
//   2. g(v1, 0, 0) <= nu for all |v1| <= v*.
// g carries units of kinematic viscosity.

#include <cstdint>
#include <functional>
#include <map>
#include <string>

namespace sgs {

struct GFunction {
  std::string family;                    // "polynomial" or a registry name
  std::map<std::string, double> params;  // serializable parameters

  std::function<double(double v1, double v3, double v4)> value;
  // (dg/dv1, dg/dv3, dg/dv4)
  std::function<std::array<double, 3>(double v1, double v3, double v4)> partials;

  // Set when the (v3,v4)-Hessian is state independent; enables the
  // analytic convexity certificate. h = (g_33, g_34, g_44).
  bool constant_v3v4_hessian = false;
  std::array<double, 3> v3v4_hessian = {0, 0, 0};
};

/// g = c0 + c1 v1 + c2 v1^2 + l3 v3 + l4 v4 + q33 v3^2 + q34 v3 v4 + q44 v4^2
struct PolyG {
  double c0 = 0, c1 = 0, c2 = 0;
  double l3 = 0, l4 = 0;
  double q33 = 0, q34 = 0, q44 = 0;
};

GFunction make_polynomial_g(const PolyG& coeffs);

/// Constant g = value; recovers the constant-eddy-viscosity closure
/// tau^d = 2 value S.
GFunction make_constant_g(double value);

struct PositivityCertificate {
  bool convex_in_v3v4 = false;
  bool boundary_bound_ok = false;
  enum class Method { analytic, sampled } method = Method::analytic;
  // Most negative (v3,v4)-Hessian eigenvalue encountered (0 when convex).
  double worst_violation = 0;
  long samples = 0;
  // max of g(v1,0,0) over |v1| <= v_star, and the bound it is checked against
  double boundary_max = 0;
  double nu = 0;
  double v_star = 0;

  bool pass() const { return convex_in_v3v4 && boundary_bound_ok; }
};

/// Certify the two positive-dissipation conditions. Quadratic families are
/// certified analytically; everything else is sampled over an empirically
/// measured (v3, v4) envelope and labeled heuristic. Negative results are
/// reported, not thrown.
PositivityCertificate certify_positivity(const GFunction& g, double nu, double v_star,
                                         long samples, std::uint64_t seed);

}  // namespace sgs
