#include <cmath>
#include <complex>
#include <sstream>

#include "doctest.h"
#include "sgs/les.hpp"
#include "sgs/registry.hpp"
#include "sgs/sampling.hpp"

using namespace sgs;

// Independent straightforward discretization of the same scheme (central
// differences of the advective flux, compact-Laplacian viscosity,
// Williamson RK3, projection consistent with the central-difference
// divergence), written with its own loops and a brute-force DFT Poisson
// solve. Validates one step of the solver.
namespace naive {

using Field3 = std::array<std::vector<double>, 3>;

int wrap(int i, int n) { return (i % n + n) % n; }
long idx(int i, int j, int k, int n) { return (long(k) * n + j) * n + i; }

double advective_flux(const Field3& u, int a, int b, int i, int j, int k, int n) {
  return u[a][idx(i, j, k, n)] * u[b][idx(i, j, k, n)];
}

void rhs(const Field3& u, int n, double h, double nu, Field3& out) {
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < 3; ++a) {
          double div = 0;
          for (int b = 0; b < 3; ++b) {
            int ip = i, jp = j, kp = k, im = i, jm = j, km = k;
            (b == 0 ? ip : b == 1 ? jp : kp) += 1;
            (b == 0 ? im : b == 1 ? jm : km) -= 1;
            const double tp = advective_flux(u, a, b, wrap(ip, n), wrap(jp, n), wrap(kp, n), n);
            const double tm = advective_flux(u, a, b, wrap(im, n), wrap(jm, n), wrap(km, n), n);
            div += (tp - tm) / (2 * h);
          }
          double lap = -6.0 * u[a][idx(i, j, k, n)];
          for (int b = 0; b < 3; ++b) {
            int ip = i, jp = j, kp = k, im = i, jm = j, km = k;
            (b == 0 ? ip : b == 1 ? jp : kp) += 1;
            (b == 0 ? im : b == 1 ? jm : km) -= 1;
            lap += u[a][idx(wrap(ip, n), wrap(jp, n), wrap(kp, n), n)] +
                   u[a][idx(wrap(im, n), wrap(jm, n), wrap(km, n), n)];
          }
          out[a][idx(i, j, k, n)] = -div + nu * lap / (h * h);
        }
}

void project(Field3& u, int n, double h) {
  const long cells = long(n) * n * n;
  std::vector<double> div(cells);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        double d = 0;
        for (int b = 0; b < 3; ++b) {
          int ip = i, jp = j, kp = k, im = i, jm = j, km = k;
          (b == 0 ? ip : b == 1 ? jp : kp) += 1;
          (b == 0 ? im : b == 1 ? jm : km) -= 1;
          d += (u[b][idx(wrap(ip, n), wrap(jp, n), wrap(kp, n), n)] -
                u[b][idx(wrap(im, n), wrap(jm, n), wrap(km, n), n)]) /
               (2 * h);
        }
        div[idx(i, j, k, n)] = d;
      }

  // brute-force DFT, solve with the modified wavenumber of the central
  // difference, inverse DFT
  std::vector<std::complex<double>> hat(cells, 0.0);
  const std::complex<double> I(0, 1);
  for (int mk = 0; mk < n; ++mk)
    for (int mj = 0; mj < n; ++mj)
      for (int mi = 0; mi < n; ++mi) {
        std::complex<double> acc = 0;
        for (int k = 0; k < n; ++k)
          for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
              acc += div[idx(i, j, k, n)] *
                     std::exp(-2.0 * M_PI * I * double(mi * i + mj * j + mk * k) / double(n));
        auto s2 = [&](int m) {
          const double s = std::sin(2.0 * M_PI * m / n) / h;
          return s * s;
        };
        const double k2 = s2(mi) + s2(mj) + s2(mk);
        hat[idx(mi, mj, mk, n)] = (k2 == 0.0) ? 0.0 : acc / (-k2);
      }
  std::vector<double> phi(cells);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        std::complex<double> acc = 0;
        for (int mk = 0; mk < n; ++mk)
          for (int mj = 0; mj < n; ++mj)
            for (int mi = 0; mi < n; ++mi)
              acc += hat[idx(mi, mj, mk, n)] *
                     std::exp(2.0 * M_PI * I * double(mi * i + mj * j + mk * k) / double(n));
        phi[idx(i, j, k, n)] = acc.real() / double(cells);
      }
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int b = 0; b < 3; ++b) {
          int ip = i, jp = j, kp = k, im = i, jm = j, km = k;
          (b == 0 ? ip : b == 1 ? jp : kp) += 1;
          (b == 0 ? im : b == 1 ? jm : km) -= 1;
          u[b][idx(i, j, k, n)] -= (phi[idx(wrap(ip, n), wrap(jp, n), wrap(kp, n), n)] -
                                    phi[idx(wrap(im, n), wrap(jm, n), wrap(km, n), n)]) /
                                   (2 * h);
        }
}

void rk3_step(Field3& u, int n, double h, double nu, double dt) {
  static constexpr double A[3] = {0.0, -5.0 / 9.0, -153.0 / 128.0};
  static constexpr double B[3] = {1.0 / 3.0, 15.0 / 16.0, 8.0 / 15.0};
  const long cells = long(n) * n * n;
  Field3 q, r;
  for (auto& f : q) f.assign(cells, 0.0);
  for (auto& f : r) f.assign(cells, 0.0);
  for (int stage = 0; stage < 3; ++stage) {
    rhs(u, n, h, nu, r);
    for (int a = 0; a < 3; ++a)
      for (long c = 0; c < cells; ++c) {
        q[a][c] = A[stage] * q[a][c] + dt * r[a][c];
        u[a][c] += B[stage] * q[a][c];
      }
    project(u, n, h);
  }
}

}  // namespace naive

namespace {
double total_energy(const FlowState& st) {
  double e = 0;
  for (const auto& c : st.u)
    for (double v : c) e += 0.5 * v * v;
  return e * st.grid.h() * st.grid.h() * st.grid.h();
}
}  // namespace

TEST_SUITE("les") {
  TEST_CASE("grid validation") {
    CHECK_THROWS_AS(validate(Grid{7, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Grid{6, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Grid{16, -1.0}), std::invalid_argument);
    CHECK_NOTHROW(validate(Grid{8, 1.0}));
  }

  TEST_CASE("zero velocity is a fixed point") {
    const Grid g{8, 2 * M_PI};
    FlowState st = zero_state(g, 0.1);
    Solver solver(g);
    solver.step(st, nullptr, 0.01);
    for (const auto& c : st.u)
      for (double v : c) CHECK(v == 0.0);
  }

  TEST_CASE("projection kills the discrete divergence of a noisy field") {
    const Grid g{16, 2 * M_PI};
    FlowState st = zero_state(g, 0.0);
    Rng rng(301);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& c : st.u)
      for (double& v : c) v = normal(rng);
    Solver solver(g);
    solver.project(st);
    double umax = 0;
    for (const auto& c : st.u)
      for (double v : c) umax = std::max(umax, std::abs(v));
    CHECK(solver.max_divergence(st) <= 1e-10 * umax / g.L);
  }

  TEST_CASE("one step matches the independent discretization oracle at n = 8") {
    const Grid g{8, 2 * M_PI};
    const double nu = 0.02, dt = 0.01;
    FlowState st = vortex_array(g, nu, 1.0);
    Solver solver(g);
    solver.project(st);

    naive::Field3 u_ref = {st.u[0], st.u[1], st.u[2]};
    naive::rk3_step(u_ref, g.n, g.h(), nu, dt);

    solver.step(st, nullptr, dt);

    double worst = 0, scale = 0;
    for (int a = 0; a < 3; ++a)
      for (long c = 0; c < g.cells(); ++c) {
        worst = std::max(worst, std::abs(st.u[a][c] - u_ref[a][c]));
        scale = std::max(scale, std::abs(u_ref[a][c]));
      }
    CHECK(worst <= 1e-12 * scale);
  }

  TEST_CASE("taylor-green single-mode viscous decay matches the discrete rate") {
    // dE/dt = -2 nu k~^2 E with the compact-Laplacian modified wavenumber
    // k~^2 = 3 (2 - 2 cos h)/h^2 for the k = (1,1,1) mode on L = 2 pi
    SimConfig cfg;
    cfg.grid = {16, 2 * M_PI};
    cfg.nu = 1.0;
    cfg.u0 = 1e-3;
    cfg.steps = 60;
    cfg.sample_every = 60;
    cfg.model.reset();
    const RunResult res = run(cfg);
    REQUIRE(res.budget.series.size() >= 2);
    const auto& first = res.budget.series.front();
    const auto& last = res.budget.series.back();
    const double rate = std::log(first.e / last.e) / (last.t - first.t);
    const double h = cfg.grid.h();
    const double expected = 2.0 * cfg.nu * 3.0 * (2.0 - 2.0 * std::cos(h)) / (h * h);
    CHECK(rate == doctest::Approx(expected).epsilon(1e-3));
  }

  TEST_CASE("energy identity: residual shrinks at second order under step halving") {
    const Grid g{8, 2 * M_PI};
    const double nu = 0.1;
    const double t_final = 0.32;
    auto residual = [&](int steps) {
      const double dt = t_final / steps;
      FlowState st = taylor_green(g, nu, 1.0);
      Solver solver(g);
      solver.project(st);
      double e_prev = total_energy(st);
      const double e0 = e_prev;
      double phi_prev = solver.budget_sample(st, nullptr).phi_visc;
      double integral = 0;
      for (int i = 0; i < steps; ++i) {
        solver.step(st, nullptr, dt);
        const BudgetSample b = solver.budget_sample(st, nullptr);
        integral += 0.5 * dt * (phi_prev + b.phi_visc);
        phi_prev = b.phi_visc;
        e_prev = b.e;
      }
      return std::abs(e_prev - e0 + integral);
    };
    const double r1 = residual(8);
    const double r2 = residual(16);
    const double r3 = residual(32);
    // the dt-independent O(h^2) part cancels in differences; what remains
    // contracts like dt^2
    const double ratio = (r1 - r2) / std::max(r2 - r3, 1e-300);
    CHECK(ratio > 2.0);
    CHECK(ratio < 8.0);
    CHECK(r1 < 0.05 * total_energy(taylor_green(g, nu, 1.0)));
  }

  TEST_CASE("viscous-only taylor-green decays monotonically") {
    SimConfig cfg;
    cfg.grid = {8, 2 * M_PI};
    cfg.nu = 0.1;
    cfg.steps = 100;
    cfg.sample_every = 1;
    const RunResult res = run(cfg);
    CHECK_FALSE(res.budget.blew_up);
    CHECK_FALSE(res.budget.energy_growth_flagged);
    for (std::size_t i = 1; i < res.budget.series.size(); ++i)
      CHECK(res.budget.series[i].e <= res.budget.series[i - 1].e * (1.0 + 1e-12));
  }

  TEST_CASE("certified-positive potential model keeps energy non-increasing") {
    KVConfig cfg_text = KVConfig::parse_string(preset_config("tg16"));
    SimConfig cfg;
    cfg.grid = {16, 2 * M_PI};
    cfg.nu = 0.05;
    cfg.steps = 80;
    cfg.sample_every = 10;
    cfg.model = model_from_config(cfg_text);
    const RunResult res = run(cfg);
    CHECK_FALSE(res.budget.blew_up);
    CHECK_FALSE(res.budget.energy_growth_flagged);
    // subgrid dissipation component stays nonnegative for a certified model
    for (const auto& s : res.budget.series) CHECK(s.phi_sgs >= -1e-12 * s.phi_visc);
  }

  TEST_CASE("bound-violating g = 2 nu produces a negative subgrid dissipation") {
    SimConfig cfg;
    cfg.grid = {16, 2 * M_PI};
    cfg.nu = 0.05;
    cfg.steps = 40;
    cfg.sample_every = 5;
    PolyG c;
    c.c0 = 2.0 * cfg.nu;
    cfg.model = ClosureModel{Potential{make_polynomial_g(c)}, SingularityPolicy::hard_error(), "g=2nu"};
    const RunResult res = run(cfg);
    for (const auto& s : res.budget.series)
      if (s.t > 0) CHECK(s.phi_sgs < 0.0);
  }

  TEST_CASE("step throws on non-finite fields, naming the step") {
    const Grid g{8, 2 * M_PI};
    FlowState st = taylor_green(g, 0.1, 1.0);
    st.u[0][3] = std::numeric_limits<double>::infinity();
    Solver solver(g);
    CHECK_THROWS_WITH_AS(solver.step(st, nullptr, 0.01), doctest::Contains("step"),
                         std::runtime_error);
  }

  TEST_CASE("budget csv and field dump are byte-stable") {
    SimConfig cfg;
    cfg.grid = {8, 2 * M_PI};
    cfg.nu = 0.1;
    cfg.steps = 5;
    const RunResult a = run(cfg);
    const RunResult b = run(cfg);
    std::ostringstream ca, cb, fa, fb;
    write_budget_csv(ca, a.budget);
    write_budget_csv(cb, b.budget);
    write_field_dump(fa, a.final_state);
    write_field_dump(fb, b.final_state);
    CHECK(ca.str() == cb.str());
    CHECK(fa.str() == fb.str());
    CHECK(fa.str().substr(0, 8) == "sgsfield");
  }
}
