#include "sgs/model_zoo.hpp"

#include <cmath>

#include "sgs/models.hpp"

namespace sgs {

std::string ReferenceModel::name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Smagorinsky>) return "smagorinsky";
        else if constexpr (std::is_same_v<T, LundNovikov>) return "lund-novikov";
        else if constexpr (std::is_same_v<T, Kosovic>) return "kosovic";
        else return "rdh05";
      },
      kind);
}

namespace {

StressResult eval_smagorinsky(const Smagorinsky& m, const SymTensor3& s, const SkewTensor3& omega) {
  StressResult r;
  r.basis = basis_terms(s, omega);
  const double sn = frobenius_norm_S(s);
  r.coeff[0] = -2.0 * (m.cs * m.delta) * (m.cs * m.delta) * sn;
  r.tau = r.coeff[0] * r.basis[0];
  return r;
}

StressResult eval_lund_novikov(const LundNovikov& m, const SymTensor3& s, const SkewTensor3& omega,
                               const SingularityPolicy& policy) {
  StressResult r;
  r.basis = basis_terms(s, omega);
  const double d2 = m.delta * m.delta;
  const double sn = frobenius_norm_S(s);
  r.coeff[0] = m.c1 * sn * d2;
  r.coeff[1] = m.c2 * d2;
  r.coeff[2] = m.c3 * d2;
  r.coeff[4] = m.c4 * d2;
  if (m.c5 != 0.0) r.coeff[5] = m.c5 * d2 / policy.effective_s_norm(sn);
  SymTensor3 tau;
  for (int i = 0; i < 7; ++i) tau += r.coeff[i] * r.basis[i];
  r.tau = tau;
  return r;
}

StressResult eval_rdh05(const Rdh05& m, const SymTensor3& s, const SkewTensor3& omega,
                        const SingularityPolicy& policy) {
  StressResult r;
  r.basis = basis_terms(s, omega);
  const InvariantSet prim = primitive_invariants(s, omega);
  const double sn = policy.effective_s_norm(prim.s_norm);
  const double v1 = prim.i2 / (sn * sn * sn);
  const double g = m.g0 + m.g1 * v1 + m.g2 * v1 * v1;
  const double gp = m.g1 + 2.0 * m.g2 * v1;
  r.coeff[0] = m.nu * (2.0 * g - 3.0 * v1 * gp);
  r.coeff[1] = 3.0 * m.nu * gp / sn;
  r.tau = r.coeff[0] * r.basis[0] + r.coeff[1] * r.basis[1];
  return r;
}

}  // namespace

StressResult eval_reference(const ReferenceModel& m, const SymTensor3& s, const SkewTensor3& omega,
                            const SingularityPolicy& policy) {
  return std::visit(
      [&](const auto& k) -> StressResult {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Smagorinsky>) {
          return eval_smagorinsky(k, s, omega);
        } else if constexpr (std::is_same_v<T, LundNovikov>) {
          return eval_lund_novikov(k, s, omega, policy);
        } else if constexpr (std::is_same_v<T, Kosovic>) {
          LundNovikov ln;
          ln.c1 = k.c1;
          ln.c2 = k.c2;
          ln.c4 = k.c4;
          ln.delta = k.delta;
          return eval_lund_novikov(ln, s, omega, policy);
        } else {
          return eval_rdh05(k, s, omega, policy);
        }
      },
      m.kind);
}

}  // namespace sgs
