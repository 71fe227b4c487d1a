#include <cmath>

#include "doctest.h"
#include "sgs/g_function.hpp"
#include "sgs/invariants.hpp"
#include "sgs/models.hpp"
#include "sgs/sampling.hpp"

using namespace sgs;

TEST_SUITE("g_function") {
  TEST_CASE("polynomial partials match finite differences on the admissible domain") {
    PolyG c{0.3, -0.2, 0.15, 0.4, -0.25, 0.12, 0.05, 0.2};
    const GFunction g = make_polynomial_g(c);
    Rng rng(41);
    std::uniform_real_distribution<double> uv1(-0.4, 0.4);
    std::uniform_real_distribution<double> uv3(-3.0, 0.0);
    std::uniform_real_distribution<double> uv4(-2.0, 2.0);
    const double h = 1e-6;
    for (int i = 0; i < 100; ++i) {
      const double v1 = uv1(rng), v3 = uv3(rng), v4 = uv4(rng);
      const auto p = g.partials(v1, v3, v4);
      const double d1 = (g.value(v1 + h, v3, v4) - g.value(v1 - h, v3, v4)) / (2 * h);
      const double d3 = (g.value(v1, v3 + h, v4) - g.value(v1, v3 - h, v4)) / (2 * h);
      const double d4 = (g.value(v1, v3, v4 + h) - g.value(v1, v3, v4 - h)) / (2 * h);
      CHECK(p[0] == doctest::Approx(d1).epsilon(1e-6).scale(1));
      CHECK(p[1] == doctest::Approx(d3).epsilon(1e-6).scale(1));
      CHECK(p[2] == doctest::Approx(d4).epsilon(1e-6).scale(1));
    }
  }

  TEST_CASE("make_polynomial_g rejects non-finite coefficients") {
    PolyG c;
    c.q33 = std::nan("");
    CHECK_THROWS_AS(make_polynomial_g(c), std::invalid_argument);
  }

  TEST_CASE("certificate: constant g = nu/2 passes both conditions") {
    const double nu = 1e-3;
    const auto cert = certify_positivity(make_constant_g(nu / 2), nu, 1.0 / std::sqrt(6.0), 0, 1);
    CHECK(cert.convex_in_v3v4);
    CHECK(cert.boundary_bound_ok);
    CHECK(cert.method == PositivityCertificate::Method::analytic);
    CHECK(cert.worst_violation == 0.0);
    CHECK(cert.pass());
  }

  TEST_CASE("certificate: g = 2 nu violates the boundary bound") {
    const double nu = 1e-3;
    const auto cert = certify_positivity(make_constant_g(2 * nu), nu, 1.0 / std::sqrt(6.0), 0, 1);
    CHECK(cert.convex_in_v3v4);
    CHECK_FALSE(cert.boundary_bound_ok);
    CHECK(cert.boundary_max == doctest::Approx(2 * nu).epsilon(1e-15));
    CHECK_FALSE(cert.pass());
  }

  TEST_CASE("certificate: concave q33 < 0 breaks convexity") {
    const double nu = 1e-3;
    PolyG c;
    c.c0 = nu / 2;
    c.q33 = -nu;
    const auto cert = certify_positivity(make_polynomial_g(c), nu, 1.0 / std::sqrt(6.0), 0, 1);
    CHECK_FALSE(cert.convex_in_v3v4);
    CHECK(cert.worst_violation < 0.0);
    CHECK(cert.worst_violation == doctest::Approx(-2 * nu).epsilon(1e-12));
  }

  TEST_CASE("certificate: quadratic family, 2x2 eigenvalue oracle") {
    const double nu = 2e-3;
    PolyG c;
    c.c0 = nu / 2;
    c.q33 = nu;
    c.q44 = nu;
    const auto cert = certify_positivity(make_polynomial_g(c), nu, 1.0 / std::sqrt(6.0), 0, 1);
    // Hessian = diag(2 nu, 2 nu): both eigenvalues positive
    CHECK(cert.convex_in_v3v4);
    CHECK(cert.boundary_bound_ok);
    CHECK(cert.boundary_max == doctest::Approx(nu / 2).epsilon(1e-15));
  }

  TEST_CASE("certificate: vertex of a concave v1 section is found") {
    const double nu = 1e-3;
    PolyG c;
    c.c0 = 0.9 * nu;
    c.c1 = 0.0;
    c.c2 = -1.0 * nu;  // max at vertex v1 = 0 -> 0.9 nu <= nu
    auto cert = certify_positivity(make_polynomial_g(c), nu, 1.0 / std::sqrt(6.0), 0, 1);
    CHECK(cert.boundary_bound_ok);
    c.c1 = 0.2 * nu;  // shifts the vertex, still inside, raises the max above nu
    c.c2 = -0.01 * nu;
    cert = certify_positivity(make_polynomial_g(c), nu, 10.0, 0, 1);
    CHECK(cert.boundary_max > 0.9 * nu);
  }

  TEST_CASE("sampled certificate for a non-polynomial registry g") {
    const double nu = 1e-3;
    GFunction g;
    g.family = "exp-v3";
    g.value = [nu](double, double v3, double) { return 0.5 * nu * std::exp(v3); };
    g.partials = [nu](double, double v3, double) -> std::array<double, 3> {
      return {0.0, 0.5 * nu * std::exp(v3), 0.0};
    };
    const auto cert = certify_positivity(g, nu, 1.0 / std::sqrt(6.0), 2000, 5);
    CHECK(cert.method == PositivityCertificate::Method::sampled);
    CHECK(cert.samples == 2000);
    CHECK(cert.convex_in_v3v4);
    CHECK(cert.boundary_bound_ok);

    GFunction bad = g;
    bad.family = "concave-v4";
    bad.value = [nu](double, double, double v4) { return -nu * v4 * v4; };
    bad.partials = [nu](double, double, double v4) -> std::array<double, 3> {
      return {0.0, 0.0, -2.0 * nu * v4};
    };
    const auto cert2 = certify_positivity(bad, nu, 1.0 / std::sqrt(6.0), 2000, 5);
    CHECK(cert2.method == PositivityCertificate::Method::sampled);
    CHECK_FALSE(cert2.convex_in_v3v4);
    CHECK(cert2.worst_violation < 0.0);
  }

  TEST_CASE("property: certified g gives nonnegative dissipation over random states") {
    const double nu = 1e-3;
    PolyG c;
    c.c0 = nu / 2;
    c.c2 = 0.1 * nu;
    c.q33 = nu;
    c.q34 = 0.3 * nu;
    c.q44 = nu;
    const GFunction g = make_polynomial_g(c);
    REQUIRE(certify_positivity(g, nu, 1.0 / std::sqrt(6.0), 0, 1).pass());

    ClosureModel model{Potential{g}, SingularityPolicy::hard_error(), "pot"};
    Rng rng(42);
    for (int i = 0; i < 20000; ++i) {
      auto [s, w] = random_unit_state(rng, 0.05);
      const InvariantSet inv = compute_invariants(s, w);
      const double phi = total_dissipation(model, nu, s, w);
      CHECK(phi >= -1e-12 * inv.i1 * nu);
    }
  }
}
