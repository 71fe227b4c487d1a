#pragma once

// Deterministic random ensembles of strain/vorticity states and rotations.
// All draws are seed-addressed so suites are reproducible regardless of
// evaluation order.

#include <cstdint>
#include <random>
#include <utility>

#include "sgs/tensor.hpp"

namespace sgs {

/// Orthonormal basis of the 5-dimensional space of trace-free symmetric
/// tensors, <A,B> = tr(AB).
const std::array<SymTensor3, 5>& deviatoric_basis();

/// Orthonormal basis {e_ii, (e_ij+e_ji)/sqrt(2)} of all symmetric tensors.
const std::array<SymTensor3, 6>& symmetric_basis();

/// splitmix64: decorrelates per-sample seeds derived from a base seed.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

/// Trace-free symmetric tensor with i.i.d. standard normal coordinates in
/// the orthonormal deviatoric basis (rotation-invariant measure).
SymTensor3 random_deviatoric(Rng& rng);

/// Unit-norm version of random_deviatoric.
SymTensor3 random_unit_deviatoric(Rng& rng);

SkewTensor3 random_skew(Rng& rng);

/// Random (S, Omega) pair scaled so that sqrt(|S|^2 + |Omega|^2) = 1.
/// Resamples until |S| >= min_s_frac to keep states away from the
/// singular set where the scale-invariant closures blow up.
std::pair<SymTensor3, SkewTensor3> random_unit_state(Rng& rng, double min_s_frac = 0.1);

/// Uniform random rotation (unit quaternion method).
Tensor3 random_rotation(Rng& rng);

}  // namespace sgs
