#include "sgs/g_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sgs/invariants.hpp"
#include "sgs/sampling.hpp"

namespace sgs {

GFunction make_polynomial_g(const PolyG& c) {
  for (double v : {c.c0, c.c1, c.c2, c.l3, c.l4, c.q33, c.q34, c.q44})
    if (!std::isfinite(v)) throw std::invalid_argument("make_polynomial_g: non-finite coefficient");
  GFunction g;
  g.family = "polynomial";
  g.params = {{"c0", c.c0},   {"c1", c.c1},   {"c2", c.c2},   {"l3", c.l3},
              {"l4", c.l4},   {"q33", c.q33}, {"q34", c.q34}, {"q44", c.q44}};
  g.value = [c](double v1, double v3, double v4) {
    return c.c0 + c.c1 * v1 + c.c2 * v1 * v1 + c.l3 * v3 + c.l4 * v4 + c.q33 * v3 * v3 +
           c.q34 * v3 * v4 + c.q44 * v4 * v4;
  };
  g.partials = [c](double v1, double v3, double v4) -> std::array<double, 3> {
    return {c.c1 + 2.0 * c.c2 * v1, c.l3 + 2.0 * c.q33 * v3 + c.q34 * v4,
            c.l4 + c.q34 * v3 + 2.0 * c.q44 * v4};
  };
  g.constant_v3v4_hessian = true;
  g.v3v4_hessian = {2.0 * c.q33, c.q34, 2.0 * c.q44};
  return g;
}

GFunction make_constant_g(double value) {
  PolyG c;
  c.c0 = value;
  return make_polynomial_g(c);
}

namespace {

double min_eig_2x2(double h11, double h12, double h22) {
  const double mean = 0.5 * (h11 + h22);
  const double rad = std::sqrt(0.25 * (h11 - h22) * (h11 - h22) + h12 * h12);
  return mean - rad;
}

// max of the 1-D section g(v1,0,0) over [-v*, v*]: closed form for the
// quadratic section of the polynomial family, dense grid otherwise.
double boundary_max(const GFunction& g, double v_star) {
  if (g.family == "polynomial") {
    const double c0 = g.params.at("c0");
    const double c1 = g.params.at("c1");
    const double c2 = g.params.at("c2");
    auto section = [&](double v1) { return c0 + c1 * v1 + c2 * v1 * v1; };
    double best = std::max(section(-v_star), section(v_star));
    if (c2 < 0.0) {
      const double vertex = -c1 / (2.0 * c2);
      if (vertex > -v_star && vertex < v_star) best = std::max(best, section(vertex));
    }
    return best;
  }
  const int kGrid = 2001;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kGrid; ++i) {
    const double v1 = -v_star + 2.0 * v_star * i / (kGrid - 1);
    best = std::max(best, g.value(v1, 0.0, 0.0));
  }
  return best;
}

}  // namespace

PositivityCertificate certify_positivity(const GFunction& g, double nu, double v_star,
                                         long samples, std::uint64_t seed) {
  PositivityCertificate cert;
  cert.nu = nu;
  cert.v_star = v_star;
  cert.boundary_max = boundary_max(g, v_star);
  cert.boundary_bound_ok = cert.boundary_max <= nu * (1.0 + 1e-12);

  if (g.constant_v3v4_hessian) {
    cert.method = PositivityCertificate::Method::analytic;
    const double lmin = min_eig_2x2(g.v3v4_hessian[0], g.v3v4_hessian[1], g.v3v4_hessian[2]);
    cert.worst_violation = std::min(0.0, lmin);
    cert.convex_in_v3v4 = lmin >= -1e-14;
    cert.samples = 0;
    return cert;
  }

  // Sampled certificate: measure the attainable (v3, v4) envelope from
  // random states, then probe the finite-difference Hessian inside it.
  cert.method = PositivityCertificate::Method::sampled;
  double v3_min = 0.0, v4_min = 0.0, v4_max = 0.0;
  {
    Rng rng(mix_seed(seed, 0));
    const long envelope_samples = std::max<long>(samples, 1000);
    for (long i = 0; i < envelope_samples; ++i) {
      auto [s, w] = random_unit_state(rng, 0.05);
      const InvariantSet inv = compute_invariants(s, w);
      v3_min = std::min(v3_min, inv.v3);
      v4_min = std::min(v4_min, inv.v4);
      v4_max = std::max(v4_max, inv.v4);
    }
  }

  Rng rng(mix_seed(seed, 1));
  std::uniform_real_distribution<double> uv1(-v_star, v_star);
  std::uniform_real_distribution<double> uv3(v3_min, 0.0);
  std::uniform_real_distribution<double> uv4(v4_min, v4_max);
  const double h3 = std::max(1e-5, 1e-5 * std::abs(v3_min));
  const double h4 = std::max(1e-5, 1e-5 * std::max(std::abs(v4_min), std::abs(v4_max)));

  double worst = 0.0;
  for (long i = 0; i < samples; ++i) {
    const double v1 = uv1(rng);
    const double v3 = uv3(rng);
    const double v4 = uv4(rng);
    auto f = [&](double a, double b) { return g.value(v1, a, b); };
    const double g33 = (f(v3 + h3, v4) - 2.0 * f(v3, v4) + f(v3 - h3, v4)) / (h3 * h3);
    const double g44 = (f(v3, v4 + h4) - 2.0 * f(v3, v4) + f(v3, v4 - h4)) / (h4 * h4);
    const double g34 = (f(v3 + h3, v4 + h4) - f(v3 + h3, v4 - h4) - f(v3 - h3, v4 + h4) +
                        f(v3 - h3, v4 - h4)) /
                       (4.0 * h3 * h4);
    worst = std::min(worst, min_eig_2x2(g33, g34, g44));
  }
  cert.samples = samples;
  cert.worst_violation = worst;
  cert.convex_in_v3v4 = worst >= -1e-7;
  return cert;
}

}  // namespace sgs
