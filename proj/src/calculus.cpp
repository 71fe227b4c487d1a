#include "sgs/calculus.hpp"

#include <cmath>
#include <stdexcept>

#include "sgs/sampling.hpp"

namespace sgs {

SymTensor3 grad_i1(const SymTensor3& s) { return 2.0 * s; }

SymTensor3 grad_i2(const SymTensor3& s) {
  return SymTensor3::symmetrize(3.0 * (s.mat() * s.mat()));
}

SymTensor3 grad_b1(const SymTensor3& s, const SkewTensor3& om) {
  const Tensor3 w2 = om.mat() * om.mat();
  return SymTensor3::symmetrize(s.mat() * w2 + w2 * s.mat());
}

SymTensor3 grad_b2() { return SymTensor3::zero(); }

SymTensor3 grad_b3(const SkewTensor3& om) {
  return SymTensor3::symmetrize(om.mat() * om.mat());
}

SymTensor3 grad_b4(const SymTensor3& s, const SkewTensor3& om) {
  const Tensor3& sm = s.mat();
  const Tensor3& wm = om.mat();
  const Tensor3 w2 = wm * wm;
  const Tensor3 c = sm * w2 * sm * wm + w2 * sm * wm * sm + wm * sm * sm * w2;
  return SymTensor3::symmetrize(0.5 * (c + transpose(c)));
}

double fd_directional(const std::function<double(const SymTensor3&)>& f, const SymTensor3& s,
                      const SymDirection& dir) {
  if (!(dir.step > 0.0)) throw std::invalid_argument("fd_directional: step must be positive");
  const double fp = f(s + dir.step * dir.h);
  const double fm = f(s - dir.step * dir.h);
  if (!std::isfinite(fp) || !std::isfinite(fm))
    throw std::runtime_error("fd_directional: non-finite function value near sample state");
  return (fp - fm) / (2.0 * dir.step);
}

HessianSymmetryReport hessian_symmetry_check(const StressFn& tau, const SymTensor3& s,
                                             const SkewTensor3& om, double tolerance) {
  HessianSymmetryReport rep;
  rep.tolerance = tolerance;
  rep.step = fd_step(s, 0.0);
  if (rep.step <= 0.0) throw std::invalid_argument("hessian_symmetry_check: |S| = 0");

  const auto& dev = deviatoric_basis();
  // columns: directional derivatives of tau along each deviatoric basis
  // direction; the 6th (trace) direction is outside the incompressible
  // state space and is left zero.
  std::array<SymTensor3, 5> dtau;
  for (int b = 0; b < 5; ++b) {
    const SymTensor3 sp = s + rep.step * dev[b];
    const SymTensor3 sm = s - rep.step * dev[b];
    const SymTensor3 tp = tau(sp, om);
    const SymTensor3 tm = tau(sm, om);
    dtau[b] = (1.0 / (2.0 * rep.step)) * (tp - tm);
  }
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      rep.m[a][b] = trace(dtau[b].mat() * dev[a].mat());

  double num = 0, den = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const double d = rep.m[a][b] - rep.m[b][a];
      num += d * d;
      den += rep.m[a][b] * rep.m[a][b];
    }
  rep.asymmetry = den > 0 ? std::sqrt(num / den) : 0.0;
  rep.self_adjoint = rep.asymmetry <= tolerance;
  return rep;
}

HessianSymmetryReport hessian_symmetry_check(const ClosureModel& model, const SymTensor3& s,
                                             const SkewTensor3& om, double tolerance) {
  StressFn fn = [&model](const SymTensor3& ss, const SkewTensor3& ww) {
    return eval(model, ss, ww).tau;
  };
  return hessian_symmetry_check(fn, s, om, tolerance);
}

}  // namespace sgs
