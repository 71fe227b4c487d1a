#pragma once

// Joint invariants of the strain-rate tensor S and the vorticity tensor
// Omega. The primitive set
//
//   I1 = tr(S^2)   I2 = tr(S^3)      B1 = tr(S^2 Omega^2)
//   B2 = tr(Omega^2)   B3 = tr(S Omega^2)   B4 = tr(S^2 Omega^2 S Omega)
//
// carries powers of 1/time; dividing by the matching power of |S| yields
// the dimensionless set v1..v5, invariant under (S,Omega) -> (l S, l Omega).

#include <cstdint>
#include <stdexcept>
#include <string>

#include "sgs/tensor.hpp"

namespace sgs {

/// Thrown when a scale-normalized quantity is requested at |S| ~ 0 under
/// the hard-error policy.
class singular_state_error : public std::domain_error {
 public:
  explicit singular_state_error(const std::string& msg) : std::domain_error(msg) {}
};

/// What to do when |S| falls below threshold: reject, or replace |S| by
/// sqrt(|S|^2 + epsilon^2). The default is to reject; silently
/// regularizing would hide genuine closure singularities.
struct SingularityPolicy {
  enum class Mode { error, regularize };
  Mode mode = Mode::error;
  double epsilon = 0.0;          // regularization shear scale (1/time)
  double reference_scale = 1.0;  // typical shear magnitude of the problem

  double threshold() const { return 1e-12 * reference_scale; }

  static SingularityPolicy hard_error(double reference_scale = 1.0) {
    return {Mode::error, 0.0, reference_scale};
  }
  static SingularityPolicy regularized(double epsilon, double reference_scale = 1.0) {
    return {Mode::regularize, epsilon, reference_scale};
  }

  /// |S| actually used for 1/|S| factors, or a throw under hard error.
  double effective_s_norm(double s_norm) const;
};

struct InvariantSet {
  // primitive part, units: powers of 1/time
  double i1 = 0;  // t^-2
  double i2 = 0;  // t^-3
  double b1 = 0;  // t^-4
  double b2 = 0;  // t^-2
  double b3 = 0;  // t^-3
  double b4 = 0;  // t^-6

  double s_norm = 0;  // sqrt(i1), 1/time

  // dimensionless part, valid only when scaled_valid
  double v1 = 0, v2 = 0, v3 = 0, v4 = 0, v5 = 0;
  bool scaled_valid = false;
};

/// Primitive invariants only; always well defined.
InvariantSet primitive_invariants(const SymTensor3& s, const SkewTensor3& omega);

/// Fill the v-part of a primitive set by dividing with powers of s_norm
/// (pass a regularized norm to blunt the singularity at S = 0). Throws
/// singular_state_error naming the diverging components when s_norm is
/// not positive.
InvariantSet scaled_invariants(InvariantSet inv, double s_norm);

/// Primitive + scaled in one call, with the policy deciding what happens
/// at |S| below threshold.
InvariantSet compute_invariants(const SymTensor3& s, const SkewTensor3& omega,
                                const SingularityPolicy& policy = {});

/// Brute-force scan for the supremum of |v1| = |tr(S^3)|/|S|^3 over
/// trace-free symmetric tensors: random unit deviators plus projected
/// gradient ascent from the best candidates.
struct V1ScanResult {
  double max_abs_v1 = 0;
  SymTensor3 argmax;
  long samples = 0;
};
V1ScanResult v1_extremal_scan(long sample_count, std::uint64_t seed);

}  // namespace sgs
