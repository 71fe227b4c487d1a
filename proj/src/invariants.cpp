#include "sgs/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "sgs/sampling.hpp"

namespace sgs {

double SingularityPolicy::effective_s_norm(double s_norm) const {
  if (mode == Mode::regularize) return std::sqrt(s_norm * s_norm + epsilon * epsilon);
  if (s_norm < threshold())
    throw singular_state_error("state is singular: |S| = " + std::to_string(s_norm) +
                               " below threshold " + std::to_string(threshold()));
  return s_norm;
}

InvariantSet primitive_invariants(const SymTensor3& s, const SkewTensor3& omega) {
  const Tensor3& sm = s.mat();
  const Tensor3& wm = omega.mat();
  const Tensor3 s2 = sm * sm;
  const Tensor3 w2 = wm * wm;

  InvariantSet inv;
  inv.i1 = trace(s2);
  inv.i2 = trace(s2 * sm);
  inv.b1 = trace(s2 * w2);
  inv.b2 = trace(w2);
  inv.b3 = trace(sm * w2);
  // left-to-right products, no reassociation: keeps the value bit-stable
  // across call sites and easy to cross-check against the trace oracle
  inv.b4 = trace(((((sm * sm) * wm) * wm) * sm) * wm);
  inv.s_norm = std::sqrt(std::max(inv.i1, 0.0));
  return inv;
}

InvariantSet scaled_invariants(InvariantSet inv, double s_norm) {
  if (!(s_norm > 0.0)) {
    std::string diverging;
    auto add = [&](double numerator, const char* name) {
      if (numerator != 0.0) diverging += diverging.empty() ? name : std::string(", ") + name;
    };
    add(inv.i2, "v1");
    add(inv.b1, "v2");
    add(inv.b2, "v3");
    add(inv.b3, "v4");
    add(inv.b4, "v5");
    if (diverging.empty()) diverging = "v1..v5 (0/0)";
    throw singular_state_error("scaled invariants undefined at |S| = 0; diverging: " + diverging);
  }
  const double n2 = s_norm * s_norm;
  const double n3 = n2 * s_norm;
  inv.v1 = inv.i2 / n3;
  inv.v2 = inv.b1 / (n2 * n2);
  inv.v3 = inv.b2 / n2;
  inv.v4 = inv.b3 / n3;
  inv.v5 = inv.b4 / (n3 * n3);
  inv.scaled_valid = true;
  return inv;
}

InvariantSet compute_invariants(const SymTensor3& s, const SkewTensor3& omega,
                                const SingularityPolicy& policy) {
  InvariantSet inv = primitive_invariants(s, omega);
  return scaled_invariants(inv, policy.effective_s_norm(inv.s_norm));
}

namespace {

double v1_of(const SymTensor3& s) {
  const Tensor3& m = s.mat();
  const double n = frobenius_norm_S(s);
  return trace(m * m * m) / (n * n * n);
}

// Gradient of v1 on the unit sphere of deviators:
//   dv1[H] = tr( (3 (S^2)^d / |S|^3 - 3 v1 S / |S|^2) H ).
SymTensor3 v1_gradient(const SymTensor3& s) {
  const double n = frobenius_norm_S(s);
  const double v1 = v1_of(s);
  const SymTensor3 s2d = deviator(SymTensor3::symmetrize(s.mat() * s.mat()));
  return (3.0 / (n * n * n)) * s2d - (3.0 * v1 / (n * n)) * s;
}

SymTensor3 polish(SymTensor3 s, double sign) {
  double step = 0.1;
  double best = sign * v1_of(s);
  for (int it = 0; it < 200; ++it) {
    SymTensor3 cand = s + (step * sign) * v1_gradient(s);
    cand = (1.0 / frobenius_norm_S(cand)) * cand;
    const double val = sign * v1_of(cand);
    if (val > best) {
      best = val;
      s = cand;
    } else {
      step *= 0.5;
      if (step < 1e-12) break;
    }
  }
  return s;
}

}  // namespace

V1ScanResult v1_extremal_scan(long sample_count, std::uint64_t seed) {
  V1ScanResult result;
  result.samples = sample_count;
  for (long i = 0; i < sample_count; ++i) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
    const SymTensor3 s = random_unit_deviatoric(rng);
    const double v = std::abs(v1_of(s));
    if (v > result.max_abs_v1) {
      result.max_abs_v1 = v;
      result.argmax = s;
    }
  }
  if (sample_count > 0) {
    const double sign = v1_of(result.argmax) >= 0 ? 1.0 : -1.0;
    const SymTensor3 polished = polish(result.argmax, sign);
    const double v = std::abs(v1_of(polished));
    if (v > result.max_abs_v1) {
      result.max_abs_v1 = v;
      result.argmax = polished;
    }
  }
  return result;
}

}  // namespace sgs
