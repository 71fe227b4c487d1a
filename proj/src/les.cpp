#include "sgs/les.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace sgs {

void validate(const Grid& g) {
  if (g.n < 8 || g.n % 2 != 0) throw std::invalid_argument("Grid: n must be even and >= 8");
  if (!(g.L > 0)) throw std::invalid_argument("Grid: L must be positive");
}

namespace {

inline int wrap(int i, int n) { return (i + n) % n; }

struct Indexer {
  int n;
  long operator()(int i, int j, int k) const { return (long(k) * n + j) * n + i; }
};

FlowState allocate(const Grid& g, double nu) {
  validate(g);
  FlowState st;
  st.grid = g;
  for (auto& c : st.u) c.assign(g.cells(), 0.0);
  st.p.assign(g.cells(), 0.0);
  st.nu = nu;
  return st;
}

}  // namespace

FlowState zero_state(const Grid& g, double nu) { return allocate(g, nu); }

FlowState taylor_green(const Grid& g, double nu, double u0) {
  FlowState st = allocate(g, nu);
  const Indexer id{g.n};
  const double k = 2.0 * M_PI / g.L;
  for (int kk = 0; kk < g.n; ++kk)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const double x = i * g.h(), y = j * g.h(), z = kk * g.h();
        st.u[0][id(i, j, kk)] = u0 * std::sin(k * x) * std::cos(k * y) * std::cos(k * z);
        st.u[1][id(i, j, kk)] = -u0 * std::cos(k * x) * std::sin(k * y) * std::cos(k * z);
      }
  return st;
}

FlowState vortex_array(const Grid& g, double nu, double u0) {
  FlowState st = allocate(g, nu);
  const Indexer id{g.n};
  const double k = 2.0 * M_PI / g.L;
  for (int kk = 0; kk < g.n; ++kk)
    for (int j = 0; j < g.n; ++j)
      for (int i = 0; i < g.n; ++i) {
        const double x = i * g.h(), y = j * g.h();
        st.u[0][id(i, j, kk)] = -u0 * std::sin(k * y);
        st.u[1][id(i, j, kk)] = u0 * std::sin(k * x);
      }
  return st;
}

struct Solver::Impl {
  Grid grid;
  Indexer id;
  long cells;

  // symmetric flux tensor T_ij = u_i u_j - 2 nu S_ij + tau_ij, 6 slots
  // ordered (00,11,22,01,02,12)
  std::array<std::vector<double>, 6> flux;
  std::array<std::vector<double>, 3> rhs;
  std::array<std::vector<double>, 3> rk_q;

  std::vector<double> real_buf;
  fftw_complex* cplx_buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  double nu_t_max = 0;
  long step_count = 0;

  explicit Impl(const Grid& g) : grid(g), id{g.n}, cells(g.cells()) {
    for (auto& f : flux) f.assign(cells, 0.0);
    for (auto& f : rhs) f.assign(cells, 0.0);
    for (auto& f : rk_q) f.assign(cells, 0.0);
    real_buf.assign(cells, 0.0);
    const int n = g.n;
    cplx_buf = fftw_alloc_complex(long(n) * n * (n / 2 + 1));
    fwd = fftw_plan_dft_r2c_3d(n, n, n, real_buf.data(), cplx_buf, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_3d(n, n, n, cplx_buf, real_buf.data(), FFTW_ESTIMATE);
  }

  ~Impl() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(cplx_buf);
  }

  void compute_flux(const FlowState& st, const ClosureModel* model) {
    const int n = grid.n;
    const double inv2h = 1.0 / (2.0 * grid.h());
    nu_t_max = 0;
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const int im = wrap(i - 1, n), ip = wrap(i + 1, n);
          const int jm = wrap(j - 1, n), jp = wrap(j + 1, n);
          const int km = wrap(k - 1, n), kp = wrap(k + 1, n);
          Tensor3 g;
          for (int a = 0; a < 3; ++a) {
            const std::vector<double>& ua = st.u[a];
            g(a, 0) = (ua[id(ip, j, k)] - ua[id(im, j, k)]) * inv2h;
            g(a, 1) = (ua[id(i, jp, k)] - ua[id(i, jm, k)]) * inv2h;
            g(a, 2) = (ua[id(i, j, kp)] - ua[id(i, j, km)]) * inv2h;
          }
          Tensor3 tau;
          if (model) {
            const SymTensor3 s = SymTensor3::symmetrize(g);
            const SkewTensor3 w = SkewTensor3::antisymmetrize(g);
            const StressResult res = eval(*model, s, w);
            tau = res.tau.mat();
            const double sn = frobenius_norm_S(s);
            if (sn > 0) nu_t_max = std::max(nu_t_max, frobenius(tau) / (2.0 * sn));
          }
          const long c = id(i, j, k);
          const double u0 = st.u[0][c], u1 = st.u[1][c], u2 = st.u[2][c];
          flux[0][c] = u0 * u0 + tau(0, 0);
          flux[1][c] = u1 * u1 + tau(1, 1);
          flux[2][c] = u2 * u2 + tau(2, 2);
          flux[3][c] = u0 * u1 + tau(0, 1);
          flux[4][c] = u0 * u2 + tau(0, 2);
          flux[5][c] = u1 * u2 + tau(1, 2);
        }
  }

  // rhs_a = -D_b T_ab + nu Lap u_a. The advective/subgrid part is the
  // central difference of the pointwise flux; the viscous term uses the
  // compact 3-point Laplacian (legitimate since div u = 0 discretely, so
  // 2 div(nu S) = nu Lap u), which damps the checkerboard modes the wide
  // stencil cannot see.
  void compute_rhs(const FlowState& st, const ClosureModel* model) {
    compute_flux(st, model);
    const int n = grid.n;
    const double h = grid.h();
    const double inv2h = 1.0 / (2.0 * h);
    const double invh2 = 1.0 / (h * h);
    // slot lookup: T(a,b) -> flux index
    static constexpr int slot[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const int im = wrap(i - 1, n), ip = wrap(i + 1, n);
          const int jm = wrap(j - 1, n), jp = wrap(j + 1, n);
          const int km = wrap(k - 1, n), kp = wrap(k + 1, n);
          const long c = id(i, j, k);
          for (int a = 0; a < 3; ++a) {
            const double dx = (flux[slot[a][0]][id(ip, j, k)] - flux[slot[a][0]][id(im, j, k)]) * inv2h;
            const double dy = (flux[slot[a][1]][id(i, jp, k)] - flux[slot[a][1]][id(i, jm, k)]) * inv2h;
            const double dz = (flux[slot[a][2]][id(i, j, kp)] - flux[slot[a][2]][id(i, j, km)]) * inv2h;
            const std::vector<double>& ua = st.u[a];
            const double lap = (ua[id(ip, j, k)] + ua[id(im, j, k)] + ua[id(i, jp, k)] +
                                ua[id(i, jm, k)] + ua[id(i, j, kp)] + ua[id(i, j, km)] -
                                6.0 * ua[c]) *
                               invh2;
            rhs[a][c] = -(dx + dy + dz) + st.nu * lap;
          }
        }
  }

  void divergence(const FlowState& st, std::vector<double>& out) const {
    const int n = grid.n;
    const double inv2h = 1.0 / (2.0 * grid.h());
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const int im = wrap(i - 1, n), ip = wrap(i + 1, n);
          const int jm = wrap(j - 1, n), jp = wrap(j + 1, n);
          const int km = wrap(k - 1, n), kp = wrap(k + 1, n);
          out[id(i, j, k)] = ((st.u[0][id(ip, j, k)] - st.u[0][id(im, j, k)]) +
                              (st.u[1][id(i, jp, k)] - st.u[1][id(i, jm, k)]) +
                              (st.u[2][id(i, j, kp)] - st.u[2][id(i, j, km)])) *
                             inv2h;
        }
  }

  // Solve Lap~ phi = div u with the modified wavenumber of the central
  // first difference, then subtract the central gradient of phi. Modes the
  // central difference cannot see (zero and Nyquist per axis) are left
  // untouched; they carry no discrete divergence.
  void project(FlowState& st) {
    const int n = grid.n;
    divergence(st, real_buf);
    fftw_execute(fwd);
    const double h = grid.h();
    const double norm = 1.0 / double(grid.cells());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n / 2 + 1; ++c) {
          const long idx = (long(a) * n + b) * (n / 2 + 1) + c;
          auto sin2 = [&](int m) {
            const double s = std::sin(2.0 * M_PI * m / n) / h;
            return s * s;
          };
          const double k2 = sin2(a) + sin2(b) + sin2(c);
          if (k2 == 0.0) {
            cplx_buf[idx][0] = 0.0;
            cplx_buf[idx][1] = 0.0;
          } else {
            const double f = -norm / k2;
            cplx_buf[idx][0] *= f;
            cplx_buf[idx][1] *= f;
          }
        }
    fftw_execute(bwd);  // real_buf now holds phi
    const double inv2h = 1.0 / (2.0 * h);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const int im = wrap(i - 1, n), ip = wrap(i + 1, n);
          const int jm = wrap(j - 1, n), jp = wrap(j + 1, n);
          const int km = wrap(k - 1, n), kp = wrap(k + 1, n);
          const long c = id(i, j, k);
          st.u[0][c] -= (real_buf[id(ip, j, k)] - real_buf[id(im, j, k)]) * inv2h;
          st.u[1][c] -= (real_buf[id(i, jp, k)] - real_buf[id(i, jm, k)]) * inv2h;
          st.u[2][c] -= (real_buf[id(i, j, kp)] - real_buf[id(i, j, km)]) * inv2h;
          st.p[c] = real_buf[c];
        }
  }
};

Solver::Solver(const Grid& g) : impl_(std::make_unique<Impl>(g)) { validate(g); }
Solver::~Solver() = default;

double Solver::nu_t_estimate() const { return impl_->nu_t_max; }
long Solver::steps_taken() const { return impl_->step_count; }

void Solver::prime(const FlowState& st, const ClosureModel* model) {
  impl_->compute_flux(st, model);
}

void Solver::project(FlowState& st) { impl_->project(st); }

double Solver::max_divergence(const FlowState& st) const {
  std::vector<double> div(impl_->cells);
  impl_->divergence(st, div);
  double m = 0;
  for (double v : div) m = std::max(m, std::abs(v));
  return m;
}

void Solver::step(FlowState& st, const ClosureModel* model, double dt) {
  // Williamson low-storage RK3
  static constexpr double A[3] = {0.0, -5.0 / 9.0, -153.0 / 128.0};
  static constexpr double B[3] = {1.0 / 3.0, 15.0 / 16.0, 8.0 / 15.0};
  Impl& im = *impl_;
  try {
    for (auto& q : im.rk_q) std::fill(q.begin(), q.end(), 0.0);
    for (int stage = 0; stage < 3; ++stage) {
      im.compute_rhs(st, model);
      for (int a = 0; a < 3; ++a) {
        std::vector<double>& q = im.rk_q[a];
        std::vector<double>& u = st.u[a];
        const std::vector<double>& r = im.rhs[a];
        for (long c = 0; c < im.cells; ++c) {
          q[c] = A[stage] * q[c] + dt * r[c];
          u[c] += B[stage] * q[c];
        }
      }
      im.project(st);
    }
  } catch (const std::exception& ex) {
    throw std::runtime_error("les: step " + std::to_string(im.step_count + 1) +
                             " aborted: " + ex.what());
  }
  st.t += dt;
  ++im.step_count;
  double umax = 0;
  for (const auto& comp : st.u)
    for (double v : comp) umax = std::max(umax, std::abs(v));
  if (!std::isfinite(umax))
    throw std::runtime_error("les: non-finite velocity after step " + std::to_string(im.step_count));
}

BudgetSample Solver::budget_sample(const FlowState& st, const ClosureModel* model) const {
  const Impl& im = *impl_;
  const int n = im.grid.n;
  const double inv2h = 1.0 / (2.0 * im.grid.h());
  const double dv = im.grid.h() * im.grid.h() * im.grid.h();
  BudgetSample out;
  out.t = st.t;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int imn = wrap(i - 1, n), ip = wrap(i + 1, n);
        const int jm = wrap(j - 1, n), jp = wrap(j + 1, n);
        const int km = wrap(k - 1, n), kp = wrap(k + 1, n);
        Tensor3 g;
        for (int a = 0; a < 3; ++a) {
          const std::vector<double>& ua = st.u[a];
          g(a, 0) = (ua[im.id(ip, j, k)] - ua[im.id(imn, j, k)]) * inv2h;
          g(a, 1) = (ua[im.id(i, jp, k)] - ua[im.id(i, jm, k)]) * inv2h;
          g(a, 2) = (ua[im.id(i, j, kp)] - ua[im.id(i, j, km)]) * inv2h;
        }
        const SymTensor3 s = SymTensor3::symmetrize(g);
        const double i1 = trace(s.mat() * s.mat());
        out.phi_visc += 2.0 * st.nu * i1 * dv;
        if (model) {
          const SkewTensor3 w = SkewTensor3::antisymmetrize(g);
          const SymTensor3 tau = eval(*model, s, w).tau;
          out.phi_sgs += -trace(tau.mat() * s.mat()) * dv;
        }
        const long c = im.id(i, j, k);
        const double e2 =
            st.u[0][c] * st.u[0][c] + st.u[1][c] * st.u[1][c] + st.u[2][c] * st.u[2][c];
        out.e += 0.5 * e2 * dv;
        out.umax = std::max(out.umax, std::sqrt(e2));
      }
  return out;
}

namespace {

ClosureModel with_solver_policy(const ClosureModel& model, double uref, double L) {
  ClosureModel m = model;
  const double shear_ref = (uref > 0 ? uref : 1.0) / L;
  m.policy = SingularityPolicy::regularized(1e-8 * shear_ref, shear_ref);
  return m;
}

double choose_dt(const SimConfig& cfg, double umax, double nu_t) {
  const double h = cfg.grid.h();
  double dt = cfg.dt_max;
  if (umax > 0) dt = std::min(dt, cfg.cfl * h / umax);
  const double nu_eff = cfg.nu + nu_t;
  if (nu_eff > 0) dt = std::min(dt, cfg.diff * h * h / nu_eff);
  return dt;
}

}  // namespace

FlowState step(const FlowState& st, const ClosureModel& model, double dt) {
  FlowState out = st;
  double umax = 0;
  for (const auto& comp : out.u)
    for (double v : comp) umax = std::max(umax, std::abs(v));
  const ClosureModel m = with_solver_policy(model, umax, st.grid.L);
  Solver solver(st.grid);
  solver.step(out, &m, dt);
  return out;
}

RunResult run(const SimConfig& cfg) {
  validate(cfg.grid);
  FlowState st;
  if (cfg.ic == "taylor-green") st = taylor_green(cfg.grid, cfg.nu, cfg.u0);
  else if (cfg.ic == "vortex") st = vortex_array(cfg.grid, cfg.nu, cfg.u0);
  else if (cfg.ic == "zero") st = zero_state(cfg.grid, cfg.nu);
  else throw std::invalid_argument("run: unknown initial condition '" + cfg.ic + "'");

  Solver solver(cfg.grid);
  solver.project(st);

  std::optional<ClosureModel> model;
  if (cfg.model) model = with_solver_policy(*cfg.model, cfg.u0, cfg.grid.L);
  const ClosureModel* model_ptr = model ? &*model : nullptr;
  solver.prime(st, model_ptr);

  RunResult result;
  BudgetSample s0 = solver.budget_sample(st, model_ptr);
  result.budget.series.push_back(s0);
  const double e0 = s0.e;
  double e_prev = s0.e;
  double umax_cur = s0.umax;

  for (int step_i = 1; step_i <= cfg.steps; ++step_i) {
    const double dt = choose_dt(cfg, umax_cur, solver.nu_t_estimate());
    try {
      solver.step(st, model_ptr, dt);
    } catch (const std::exception& ex) {
      result.budget.diagnostic = ex.what();
      result.budget.blew_up = true;
      break;
    }
    const BudgetSample s = solver.budget_sample(st, model_ptr);
    if (s.e > e_prev * (1.0 + cfg.growth_tol)) result.budget.energy_growth_flagged = true;
    e_prev = s.e;
    umax_cur = s.umax;
    if (step_i % cfg.sample_every == 0 || step_i == cfg.steps) result.budget.series.push_back(s);
    if (s.e > 10.0 * e0) {
      result.budget.blew_up = true;
      result.budget.diagnostic =
          "energy blow-up at step " + std::to_string(step_i) + ": E = " + std::to_string(s.e) +
          " > 10 E0";
      break;
    }
  }
  result.final_state = std::move(st);
  return result;
}

void write_budget_csv(std::ostream& os, const EnergyBudget& b) {
  os << "t,E,Phi_visc,Phi_sgs,max_u\n";
  char line[256];
  for (const BudgetSample& s : b.series) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.e, s.phi_visc,
                  s.phi_sgs, s.umax);
    os << line;
  }
}

void write_field_dump(std::ostream& os, const FlowState& st) {
  char header[160];
  std::snprintf(header, sizeof header, "sgsfield n=%d L=%.17g t=%.17g components=u0,u1,u2,p layout=i-fastest\n",
                st.grid.n, st.grid.L, st.t);
  os << header;
  auto dump = [&os](const std::vector<double>& f) {
    os.write(reinterpret_cast<const char*>(f.data()),
             static_cast<std::streamsize>(f.size() * sizeof(double)));
  };
  for (const auto& c : st.u) dump(c);
  dump(st.p);
}

}  // namespace sgs
