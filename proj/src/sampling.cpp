#include "sgs/sampling.hpp"

#include <cmath>

namespace sgs {

namespace {
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt6 = std::sqrt(6.0);

std::array<SymTensor3, 5> make_dev_basis() {
  std::array<SymTensor3, 5> b;
  b[0] = SymTensor3::diag(1.0 / kSqrt2, -1.0 / kSqrt2, 0.0);
  b[1] = SymTensor3::diag(1.0 / kSqrt6, 1.0 / kSqrt6, -2.0 / kSqrt6);
  Tensor3 m;
  m(0, 1) = m(1, 0) = 1.0 / kSqrt2;
  b[2] = SymTensor3(m);
  m = Tensor3();
  m(0, 2) = m(2, 0) = 1.0 / kSqrt2;
  b[3] = SymTensor3(m);
  m = Tensor3();
  m(1, 2) = m(2, 1) = 1.0 / kSqrt2;
  b[4] = SymTensor3(m);
  return b;
}

std::array<SymTensor3, 6> make_sym_basis() {
  std::array<SymTensor3, 6> b;
  b[0] = SymTensor3::diag(1, 0, 0);
  b[1] = SymTensor3::diag(0, 1, 0);
  b[2] = SymTensor3::diag(0, 0, 1);
  Tensor3 m;
  m(0, 1) = m(1, 0) = 1.0 / kSqrt2;
  b[3] = SymTensor3(m);
  m = Tensor3();
  m(0, 2) = m(2, 0) = 1.0 / kSqrt2;
  b[4] = SymTensor3(m);
  m = Tensor3();
  m(1, 2) = m(2, 1) = 1.0 / kSqrt2;
  b[5] = SymTensor3(m);
  return b;
}
}  // namespace

const std::array<SymTensor3, 5>& deviatoric_basis() {
  static const std::array<SymTensor3, 5> b = make_dev_basis();
  return b;
}

const std::array<SymTensor3, 6>& symmetric_basis() {
  static const std::array<SymTensor3, 6> b = make_sym_basis();
  return b;
}

SymTensor3 random_deviatoric(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SymTensor3 s;
  for (const SymTensor3& e : deviatoric_basis()) s += normal(rng) * e;
  return s;
}

SymTensor3 random_unit_deviatoric(Rng& rng) {
  for (;;) {
    SymTensor3 s = random_deviatoric(rng);
    const double n = frobenius_norm_S(s);
    if (n > 1e-8) return (1.0 / n) * s;
  }
}

SkewTensor3 random_skew(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return SkewTensor3::from_upper(normal(rng), normal(rng), normal(rng));
}

std::pair<SymTensor3, SkewTensor3> random_unit_state(Rng& rng, double min_s_frac) {
  for (;;) {
    SymTensor3 s = random_deviatoric(rng);
    SkewTensor3 w = random_skew(rng);
    const double sn = frobenius_norm_S(s);
    const double wn = frobenius(w.mat());
    const double total = std::sqrt(sn * sn + wn * wn);
    if (total < 1e-8) continue;
    s *= 1.0 / total;
    w *= 1.0 / total;
    if (frobenius_norm_S(s) >= min_s_frac) return {s, w};
  }
}

Tensor3 random_rotation(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double q0, q1, q2, q3, n;
  do {
    q0 = normal(rng);
    q1 = normal(rng);
    q2 = normal(rng);
    q3 = normal(rng);
    n = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
  } while (n < 1e-8);
  q0 /= n;
  q1 /= n;
  q2 /= n;
  q3 /= n;
  Tensor3 r;
  r(0, 0) = 1 - 2 * (q2 * q2 + q3 * q3);
  r(0, 1) = 2 * (q1 * q2 - q0 * q3);
  r(0, 2) = 2 * (q1 * q3 + q0 * q2);
  r(1, 0) = 2 * (q1 * q2 + q0 * q3);
  r(1, 1) = 1 - 2 * (q1 * q1 + q3 * q3);
  r(1, 2) = 2 * (q2 * q3 - q0 * q1);
  r(2, 0) = 2 * (q1 * q3 - q0 * q2);
  r(2, 1) = 2 * (q2 * q3 + q0 * q1);
  r(2, 2) = 1 - 2 * (q1 * q1 + q2 * q2);
  return r;
}

}  // namespace sgs
