#include "sgs/models.hpp"

#include <cmath>

namespace sgs {

std::array<SymTensor3, 7> basis_terms(const SymTensor3& s, const SkewTensor3& omega) {
  const Tensor3& sm = s.mat();
  const Tensor3& wm = omega.mat();
  const Tensor3 s2 = sm * sm;
  const Tensor3 w2 = wm * wm;
  const Tensor3 wsw = wm * sm * wm;

  std::array<SymTensor3, 7> b;
  b[0] = s;
  b[1] = SymTensor3::symmetrize(deviator(s2));
  b[2] = SymTensor3::symmetrize(deviator(w2));
  b[3] = SymTensor3::symmetrize(deviator(wsw));
  // commutators of a symmetric with a skew tensor are symmetric and
  // trace-free; symmetrize only to scrub round-off
  b[4] = SymTensor3::symmetrize(commutator(sm, wm));
  b[5] = SymTensor3::symmetrize(commutator(s2, wm));
  b[6] = SymTensor3::symmetrize(commutator(wsw, wm));
  return b;
}

namespace {

StressResult assemble(const std::array<double, 7>& coeff, const std::array<SymTensor3, 7>& basis) {
  StressResult r;
  r.coeff = coeff;
  r.basis = basis;
  SymTensor3 tau;
  for (int i = 0; i < 7; ++i) tau += coeff[i] * basis[i];
  r.tau = tau;
  return r;
}

}  // namespace

ScaledAlpha make_scaled_alpha(const ScaledAlphaPoly& p) {
  ScaledAlpha m;
  for (int i = 0; i < 7; ++i) {
    const std::array<double, 6> c = p.c[i];
    m.alpha0[i] = [c](const InvariantSet& inv) {
      return c[0] + c[1] * inv.v1 + c[2] * inv.v2 + c[3] * inv.v3 + c[4] * inv.v4 + c[5] * inv.v5;
    };
  }
  return m;
}

StressResult eval_general(const GeneralAlpha& m, const SymTensor3& s, const SkewTensor3& omega) {
  const InvariantSet inv = primitive_invariants(s, omega);
  std::array<double, 7> coeff = {};
  for (int i = 0; i < 7; ++i) coeff[i] = m.alpha[i] ? m.alpha[i](inv) : 0.0;
  return assemble(coeff, basis_terms(s, omega));
}

StressResult eval_scaled(const ScaledAlpha& m, const SymTensor3& s, const SkewTensor3& omega,
                         const SingularityPolicy& policy) {
  InvariantSet inv = primitive_invariants(s, omega);
  const double sn = policy.effective_s_norm(inv.s_norm);
  inv = scaled_invariants(inv, sn);
  const double sn2 = sn * sn;
  // |S| powers carried by each slot: (0, 1, 1, 2, 1, 2, 3)
  const double scale[7] = {1.0, 1.0 / sn, 1.0 / sn, 1.0 / sn2, 1.0 / sn, 1.0 / sn2, 1.0 / (sn2 * sn)};
  std::array<double, 7> coeff = {};
  for (int i = 0; i < 7; ++i) coeff[i] = m.alpha0[i] ? m.alpha0[i](inv) * scale[i] : 0.0;
  return assemble(coeff, basis_terms(s, omega));
}

ScaledAlpha to_scaled(const Potential& m) {
  const GFunction g = m.g;
  ScaledAlpha out;
  out.alpha0[0] = [g](const InvariantSet& inv) {
    const auto d = g.partials(inv.v1, inv.v3, inv.v4);
    return 2.0 * g.value(inv.v1, inv.v3, inv.v4) - 3.0 * inv.v1 * d[0] - 2.0 * inv.v3 * d[1] -
           3.0 * inv.v4 * d[2];
  };
  out.alpha0[1] = [g](const InvariantSet& inv) { return 3.0 * g.partials(inv.v1, inv.v3, inv.v4)[0]; };
  out.alpha0[2] = [g](const InvariantSet& inv) { return g.partials(inv.v1, inv.v3, inv.v4)[2]; };
  return out;
}

StressResult eval_potential(const Potential& m, const SymTensor3& s, const SkewTensor3& omega,
                            const SingularityPolicy& policy) {
  return eval_scaled(to_scaled(m), s, omega, policy);
}

GeneralAlpha to_general(const ScaledAlpha& m) {
  GeneralAlpha out;
  static constexpr double kHalfPowers[7] = {0.0, 0.5, 0.5, 1.0, 0.5, 1.0, 1.5};
  for (int i = 0; i < 7; ++i) {
    const AlphaFn a0 = m.alpha0[i];
    if (!a0) continue;
    const double p = kHalfPowers[i];
    out.alpha[i] = [a0, p](const InvariantSet& prim) {
      InvariantSet inv = scaled_invariants(prim, prim.s_norm);
      return std::pow(prim.i1, -p) * a0(inv);
    };
  }
  return out;
}

StressResult eval(const ClosureModel& m, const SymTensor3& s, const SkewTensor3& omega) {
  return std::visit(
      [&](const auto& form) -> StressResult {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, GeneralAlpha>) return eval_general(form, s, omega);
        else if constexpr (std::is_same_v<T, ScaledAlpha>) return eval_scaled(form, s, omega, m.policy);
        else if constexpr (std::is_same_v<T, Potential>) return eval_potential(form, s, omega, m.policy);
        else return eval_reference(form, s, omega, m.policy);
      },
      m.form);
}

double total_dissipation(const ClosureModel& m, double nu, const SymTensor3& s,
                         const SkewTensor3& omega) {
  const StressResult r = eval(m, s, omega);
  const Tensor3 visc = (2.0 * nu) * s.mat();
  return trace((visc - r.tau.mat()) * s.mat());
}

}  // namespace sgs
