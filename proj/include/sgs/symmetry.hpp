#pragma once

// The five symmetry groups of the incompressible Navier-Stokes equations
// as finite transformations, acting on space-time velocity/pressure fields
// and on pointwise (S, Omega) states:
//
//   time shift       (t,x,u,p) -> (t+e, x, u, p)
//   galilean         (t,x,u,p) -> (t, x+a(t), u+a'(t), p - rho a''(t).x)
//   rotation         (t,x,u,p) -> (t, Rx, Ru, p)
//   pressure shift   (t,x,u,p) -> (t, x, u, p + xi(t))
//   scaling          (t,x,u,p) -> (e^{2e} t, e^{e} x, e^{-e} u, e^{-2e} p)
//
// A closure is equivariant under an element when tau evaluated on the
// transformed state equals the prescribed transform of tau: conjugation
// R tau R^T for rotations, the factor e^{-2e} for scalings, identity for
// the rest. The infinite-dimensional groups are probed through polynomial
// a(t) and xi(t) of degree <= 4.

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "sgs/models.hpp"
#include "sgs/tensor.hpp"

namespace sgs {

/// Real polynomial of degree <= 4 with analytic first and second
/// derivatives (closed under the differentiations the group maps need).
struct Poly4 {
  std::array<double, 5> c = {};
  double eval(double t) const { return c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * c[4]))); }
  double d1(double t) const { return c[1] + t * (2 * c[2] + t * (3 * c[3] + t * 4 * c[4])); }
  double d2(double t) const { return 2 * c[2] + t * (6 * c[3] + t * 12 * c[4]); }
};

struct PolyVec3 {
  std::array<Poly4, 3> comp;
  Vec3 eval(double t) const { return {comp[0].eval(t), comp[1].eval(t), comp[2].eval(t)}; }
  Vec3 d1(double t) const { return {comp[0].d1(t), comp[1].d1(t), comp[2].d1(t)}; }
  Vec3 d2(double t) const { return {comp[0].d2(t), comp[1].d2(t), comp[2].d2(t)}; }
};

struct TimeShift {
  double eps = 0;
};
struct Galilean {
  PolyVec3 alpha;
};
struct RotationEl {
  Tensor3 r = Tensor3::identity();
};
struct PressureShift {
  Poly4 xi;
};
struct ScalingEl {
  double eps = 0;
};

using GroupElement = std::variant<TimeShift, Galilean, RotationEl, PressureShift, ScalingEl>;

enum class GroupKind { time_shift, galilean, rotation, pressure_shift, scaling };

GroupKind kind_of(const GroupElement& g);
std::string kind_name(GroupKind k);

/// Validated rotation element: ||R R^T - Id|| <= 1e-12 and det R > 0.
RotationEl make_rotation(const Tensor3& r);

/// Velocity/pressure field with exact analytic gradient; the probe
/// ensemble for the harness. rho enters only the Galilean pressure
/// correction.
struct AnalyticField {
  std::string name;
  std::function<Vec3(double t, const Vec3& x)> u;
  std::function<Tensor3(double t, const Vec3& x)> grad_u;  // (i,j) = du_i/dx_j
  std::function<double(double t, const Vec3& x)> p;
  bool divergence_free = false;
  double rho = 1.0;
};

struct SpacetimePoint {
  double t = 0;
  Vec3 x = {0, 0, 0};
};

/// Transformed field, gradients composed by the chain rule.
AnalyticField act_on_field(const GroupElement& g, const AnalyticField& f);

/// Image of an event under the group element's space-time map.
SpacetimePoint map_event(const GroupElement& g, const SpacetimePoint& e);

/// Pointwise action on (S, Omega) together with the transformation law
/// the closure must satisfy.
struct InducedTransform {
  SymTensor3 s;
  SkewTensor3 omega;
  enum class Law { identity, conjugate, scale } law = Law::identity;
  Tensor3 r = Tensor3::identity();
  double factor = 1.0;

  SymTensor3 apply(const SymTensor3& tau) const;
};

InducedTransform induced_state_transform(const GroupElement& g, const SymTensor3& s,
                                         const SkewTensor3& omega);

// ---- probe ensembles ------------------------------------------------------

AnalyticField plane_shear_field(double rate = 1.0);
AnalyticField solid_rotation_field(double rate = 1.0);
/// Periodic vortex lattice with viscous-style amplitude decay exp(-sigma t).
AnalyticField taylor_green_field(double u0 = 1.0, double sigma = 0.0);
AnalyticField abc_field(double a = 1.0, double b = 1.0, double c = 1.0);
/// Divergence-free trigonometric polynomial with `modes` random
/// wavevectors and rotating phases (time dependent).
AnalyticField random_solenoidal_field(std::uint64_t seed, int modes = 4);

struct ProbeEnsemble {
  std::vector<std::pair<SymTensor3, SkewTensor3>> states;
  std::vector<std::pair<AnalyticField, std::vector<SpacetimePoint>>> fields;
};

/// Named analytic fields plus random states/events; fixed seed -> fixed suite.
ProbeEnsemble default_probe_ensemble(std::uint64_t seed, int n_states, int points_per_field = 8);

/// Random element of the given group at parameter scale eps: shift/scaling
/// exponent eps, rotation by angle eps about a random axis, polynomial
/// coefficients ~ eps * N(0,1).
GroupElement random_group_element(GroupKind k, std::uint64_t seed, double eps = 1.0);

// ---- defect measurement ---------------------------------------------------

struct DefectStats {
  double max_defect = 0;
  double mean_defect = 0;
  long count = 0;
  long skipped = 0;  // singular states encountered and skipped
};

/// || tau(transformed state) - expected transform of tau || / max(||tau||, floor)
DefectStats equivariance_defect(const ClosureModel& model, const GroupElement& g,
                                const std::vector<std::pair<SymTensor3, SkewTensor3>>& states);

/// Same defect through the field path: transform the field, recompute the
/// gradient at the mapped event, decompose, evaluate.
DefectStats equivariance_defect_field(const ClosureModel& model, const GroupElement& g,
                                      const AnalyticField& f,
                                      const std::vector<SpacetimePoint>& events);

/// Combined state + field sweep over an ensemble.
DefectStats equivariance_defect(const ClosureModel& model, const GroupElement& g,
                                const ProbeEnsemble& ensemble);

/// Per-group scan over an epsilon grid (group parameters scaled by eps
/// where meaningful); the JSON-facing breakage summary.
struct GroupDefectReport {
  GroupKind group;
  std::vector<double> eps_grid;
  std::vector<DefectStats> per_eps;
  double max_defect = 0;
  double mean_defect = 0;
  bool pass = false;
  double tolerance = 0;
};

std::vector<GroupDefectReport> group_defect_scan(const ClosureModel& model,
                                                 const std::vector<GroupKind>& groups,
                                                 const std::vector<double>& eps_grid,
                                                 const ProbeEnsemble& ensemble, double tolerance,
                                                 std::uint64_t seed);

}  // namespace sgs
