#pragma once

// Subgrid-stress closures built on the minimal isotropic representation
//
//   tau^d = a1 S + a2 (S^2)^d + a3 (Om^2)^d + a4 (Om S Om)^d
//         + a5 [S,Om] + a6 [S^2,Om] + a7 [Om S Om, Om]
//
// in three nested coefficient families:
//   GeneralAlpha   a_i arbitrary functions of (I1,I2,B1,B2,B3,B4); breaks
//                  the space-time scaling symmetry unless the a_i scale
//                  correctly.
//   ScaledAlpha    a_i = |S|^{-k_i} a_i^0(v1..v5) with k = (0,1,1,2,1,2,3);
//                  invariant under all five symmetry groups of the
//                  incompressible Navier-Stokes equations.
//   Potential      a single generator g(v1,v3,v4) with
//                    a1^0 = 2g - 3 v1 g_1 - 2 v3 g_3 - 3 v4 g_4,
//                    a2^0 = 3 g_1,  a3^0 = g_4,  a4^0..a7^0 = 0;
//                  the closure is then the S-derivative of a scalar
//                  potential, which makes its tangent map self-adjoint and
//                  enables the positive-dissipation certificate.
//
// States are expected incompressible (trace-free S); the trace part of tau
// is absorbed into the pressure and not modeled.

#include <array>
#include <functional>
#include <string>
#include <variant>

#include "sgs/g_function.hpp"
#include "sgs/invariants.hpp"
#include "sgs/model_zoo.hpp"
#include "sgs/tensor.hpp"

namespace sgs {

/// Scalar coefficient over the invariant vector. GeneralAlpha coefficients
/// read the primitive part; ScaledAlpha coefficients read v1..v5.
using AlphaFn = std::function<double(const InvariantSet&)>;

struct GeneralAlpha {
  std::array<AlphaFn, 7> alpha;
};

struct ScaledAlpha {
  std::array<AlphaFn, 7> alpha0;
};

/// Serializable ScaledAlpha family: each a_i^0 affine in (v1..v5),
/// a_i^0 = c[i][0] + c[i][1] v1 + ... + c[i][5] v5.
struct ScaledAlphaPoly {
  std::array<std::array<double, 6>, 7> c = {};
};
ScaledAlpha make_scaled_alpha(const ScaledAlphaPoly& p);

struct Potential {
  GFunction g;
};

struct ClosureModel {
  std::variant<GeneralAlpha, ScaledAlpha, Potential, ReferenceModel> form;
  SingularityPolicy policy;
  std::string name;
};

/// Evaluated closure: the deviatoric stress, the seven effective basis
/// coefficients actually applied, and the seven basis tensors, so that
/// tau == sum_i coeff[i] * basis[i] holds to machine precision.
struct StressResult {
  SymTensor3 tau;
  std::array<double, 7> coeff = {};
  std::array<SymTensor3, 7> basis;
};

/// The seven generators (S, (S^2)^d, (Om^2)^d, (Om S Om)^d, [S,Om],
/// [S^2,Om], [Om S Om, Om]); all symmetric, all but S trace-free.
std::array<SymTensor3, 7> basis_terms(const SymTensor3& s, const SkewTensor3& omega);

StressResult eval_general(const GeneralAlpha& m, const SymTensor3& s, const SkewTensor3& omega);
StressResult eval_scaled(const ScaledAlpha& m, const SymTensor3& s, const SkewTensor3& omega,
                         const SingularityPolicy& policy = {});
StressResult eval_potential(const Potential& m, const SymTensor3& s, const SkewTensor3& omega,
                            const SingularityPolicy& policy = {});
StressResult eval_reference(const ReferenceModel& m, const SymTensor3& s, const SkewTensor3& omega,
                            const SingularityPolicy& policy = {});

/// Dispatch on the model variant.
StressResult eval(const ClosureModel& m, const SymTensor3& s, const SkewTensor3& omega);

/// Total (viscous + subgrid) dissipation tr((2 nu S - tau) S).
double total_dissipation(const ClosureModel& m, double nu, const SymTensor3& s,
                         const SkewTensor3& omega);

/// Re-express a potential model through its a^0 coefficients. Evaluates
/// identically to eval_potential; used to validate the family nesting.
ScaledAlpha to_scaled(const Potential& m);

/// Re-express a scale-invariant model as a general one via
/// a_i = I1^{-k_i/2} a_i^0. Evaluates identically to eval_scaled.
GeneralAlpha to_general(const ScaledAlpha& m);

}  // namespace sgs
