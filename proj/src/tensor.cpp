#include "sgs/tensor.hpp"

#include <algorithm>

namespace sgs {

std::array<double, 3> sym_eigenvalues(const SymTensor3& s) {
  const Tensor3& a = s.mat();
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  std::array<double, 3> eig;
  if (p1 == 0.0) {
    eig = {a(0, 0), a(1, 1), a(2, 2)};
  } else {
    const double q = trace(a) / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Tensor3 b = (1.0 / p) * (a - q * Tensor3::identity());
    double r = det(b) / 2.0;
    r = std::clamp(r, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e0 = q + 2.0 * p * std::cos(phi);
    const double e2 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    const double e1 = 3.0 * q - e0 - e2;
    eig = {e0, e1, e2};
  }
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace sgs
