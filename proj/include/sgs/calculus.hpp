#pragma once

// Closed-form derivatives of the invariants with respect to S, under the
// Riesz pairing <B, H> = tr(B H) over symmetric directions H (this is the
// convention in which dI1/dS = 2S holds literally), plus an independent
// central-difference oracle and the self-adjointness test that
// discriminates potential-derived closures.

#include <array>
#include <functional>

#include "sgs/models.hpp"
#include "sgs/tensor.hpp"

namespace sgs {

SymTensor3 grad_i1(const SymTensor3& s);                          // 2S
SymTensor3 grad_i2(const SymTensor3& s);                          // 3S^2
SymTensor3 grad_b1(const SymTensor3& s, const SkewTensor3& om);   // S Om^2 + Om^2 S
SymTensor3 grad_b2();                                             // 0
SymTensor3 grad_b3(const SkewTensor3& om);                        // Om^2

/// dB4/dS = (1/2)(S Om^2 S Om - Om S Om^2 S + Om^2 S Om S - S Om S Om^2
///               + Om S^2 Om^2 - Om^2 S^2 Om);
/// equivalently the symmetric part of C = S Om^2 S Om + Om^2 S Om S + Om S^2 Om^2.
SymTensor3 grad_b4(const SymTensor3& s, const SkewTensor3& om);

struct SymDirection {
  SymTensor3 h;
  double step;  // > 0
};

/// Central difference (f(s + step h) - f(s - step h)) / (2 step); second
/// order, exact for quadratics. Throws on non-finite evaluations.
double fd_directional(const std::function<double(const SymTensor3&)>& f, const SymTensor3& s,
                      const SymDirection& dir);

/// Recommended step for gradient checks at state s.
inline double fd_step(const SymTensor3& s, double reference_scale = 1.0) {
  return 1e-5 * std::max(frobenius_norm_S(s), reference_scale);
}

using StressFn = std::function<SymTensor3(const SymTensor3&, const SkewTensor3&)>;

/// Matrix of the tangent map H |-> D_S tau^d[H] and its relative asymmetry
/// ||M - M^T|| / ||M||. The basis is the orthonormal split {5 deviatoric
/// directions, Id/sqrt(3)}; perturbations are restricted to the deviatoric
/// block (incompressible states live there), so the trace row and column
/// are identically zero and symmetry of M is symmetry of the 5x5 block.
struct HessianSymmetryReport {
  std::array<std::array<double, 6>, 6> m = {};
  double asymmetry = 0;
  double step = 0;
  double tolerance = 0;
  bool self_adjoint = false;
};

HessianSymmetryReport hessian_symmetry_check(const StressFn& tau, const SymTensor3& s,
                                             const SkewTensor3& om, double tolerance);
HessianSymmetryReport hessian_symmetry_check(const ClosureModel& model, const SymTensor3& s,
                                             const SkewTensor3& om, double tolerance);

}  // namespace sgs
