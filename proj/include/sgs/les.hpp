#pragma once

// Desk-scale incompressible solver on a periodic box for the filtered
// momentum equation
//
//   du/dt + div(u (x) u) + grad p - div(2 nu S) + div(tau) = 0,  div u = 0,
//
// with a pluggable subgrid closure evaluated pointwise from the discrete
// velocity gradient. Second-order central differences on a collocated
// grid, 3-stage low-storage Runge-Kutta in time, FFT pressure projection
// consistent with the central-difference divergence. The viscous term is
// applied as nu Lap u through the compact 3-point Laplacian (equal to
// 2 div(nu S) on discretely divergence-free fields, and it damps the
// checkerboard modes the wide stencil misses). The filter is the grid
// itself; no explicit kernel is applied.

#include <array>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sgs/models.hpp"

namespace sgs {

struct Grid {
  int n = 16;      // points per axis, even, >= 8
  double L = 2.0 * 3.14159265358979323846;
  double h() const { return L / n; }
  long cells() const { return long(n) * n * n; }
};

void validate(const Grid& g);

struct FlowState {
  Grid grid;
  std::array<std::vector<double>, 3> u;  // component-major, i fastest
  std::vector<double> p;
  double t = 0;
  double nu = 0;
};

FlowState zero_state(const Grid& g, double nu);
/// u = u0 (sin kx cos ky cos kz, -cos kx sin ky cos kz, 0), k = 2 pi / L.
FlowState taylor_green(const Grid& g, double nu, double u0);
/// Vortex lattice u = u0 (-sin ky, sin kx, 0): rotation-dominated cells.
FlowState vortex_array(const Grid& g, double nu, double u0);

struct BudgetSample {
  double t = 0;
  double e = 0;         // kinetic energy, volume integral of |u|^2 / 2
  double phi_visc = 0;  // volume integral of 2 nu tr(S^2)
  double phi_sgs = 0;   // volume integral of -tr(tau S)
  double umax = 0;
};

struct EnergyBudget {
  std::vector<BudgetSample> series;
  bool blew_up = false;
  bool energy_growth_flagged = false;
  std::string diagnostic;
};

/// Explicit solver bound to one grid (owns the FFT plans).
class Solver {
 public:
  explicit Solver(const Grid& g);
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  /// One RK step; dt must satisfy the advective/diffusive bounds. The
  /// model may be null (tau = 0). Throws on NaN/Inf with the step index.
  void step(FlowState& st, const ClosureModel* model, double dt);

  /// Project u onto the discretely divergence-free subspace.
  void project(FlowState& st);

  double max_divergence(const FlowState& st) const;
  BudgetSample budget_sample(const FlowState& st, const ClosureModel* model) const;

  /// Largest pointwise eddy-viscosity estimate ||tau||/(2|S|) seen in the
  /// most recent right-hand-side evaluation; feeds the diffusive dt bound.
  double nu_t_estimate() const;

  /// Evaluate one right-hand side without advancing, to seed the
  /// eddy-viscosity estimate before the first step.
  void prime(const FlowState& st, const ClosureModel* model);

  long steps_taken() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-off step with the in-solver regularized singularity policy.
FlowState step(const FlowState& st, const ClosureModel& model, double dt);

struct SimConfig {
  Grid grid;
  double nu = 0.05;
  int steps = 500;
  double cfl = 0.3;        // dt <= cfl * h / max|u|
  double diff = 0.2;       // dt <= diff * h^2 / (nu + nu_t)
  double dt_max = 0.1;
  int sample_every = 1;
  std::string ic = "taylor-green";
  double u0 = 1.0;
  double growth_tol = 1e-3;  // per-step relative energy growth tolerance
  std::optional<ClosureModel> model;  // nullopt: tau = 0
};

struct RunResult {
  EnergyBudget budget;
  FlowState final_state;
};

/// Advance the configured problem, sampling the energy budget. Stops early
/// on blow-up (E > 10 E0) or non-finite fields, with a diagnostic.
RunResult run(const SimConfig& cfg);

void write_budget_csv(std::ostream& os, const EnergyBudget& b);

/// Raw dump: one ASCII header line (n, L, t, component order), then
/// little-endian float64 arrays for u0, u1, u2, p in i-fastest order.
void write_field_dump(std::ostream& os, const FlowState& st);

}  // namespace sgs
