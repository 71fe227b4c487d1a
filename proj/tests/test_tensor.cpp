#include <cmath>
#include <limits>

#include "doctest.h"
#include "sgs/sampling.hpp"
#include "sgs/tensor.hpp"

using namespace sgs;

namespace {
Tensor3 plane_shear_grad() {
  Tensor3 g;
  g(0, 1) = 1.0;
  return g;
}
}  // namespace

TEST_SUITE("tensor") {
  TEST_CASE("decompose: symmetric input") {
    const auto d = decompose(Tensor3::diag(1, -1, 0));
    CHECK(frobenius(d.s.mat() - Tensor3::diag(1, -1, 0)) == 0.0);
    CHECK(frobenius(d.omega.mat()) == 0.0);
  }

  TEST_CASE("decompose: plane shear") {
    const auto d = decompose(plane_shear_grad());
    CHECK(d.s(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.s(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.s(0, 0) == 0.0);
    CHECK(d.omega(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.omega(1, 0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(frobenius(d.s.mat() + d.omega.mat() - d.grad) == 0.0);
  }

  TEST_CASE("decompose: antisymmetric input (solid rotation)") {
    Tensor3 g;
    g(0, 1) = -1.0;
    g(1, 0) = 1.0;
    const auto d = decompose(g);
    CHECK(frobenius(d.s.mat()) == 0.0);
    CHECK(frobenius(d.omega.mat() - g) == 0.0);
  }

  TEST_CASE("decompose rejects non-finite input") {
    Tensor3 g;
    g(1, 2) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(decompose(g), std::invalid_argument);
  }

  TEST_CASE("deviator examples") {
    CHECK(frobenius(deviator(Tensor3::identity())) == 0.0);
    CHECK(frobenius(deviator(Tensor3::diag(1, -1, 0)) - Tensor3::diag(1, -1, 0)) == 0.0);
    CHECK(frobenius(deviator(Tensor3::diag(3, 0, 0)) - Tensor3::diag(2, -1, -1)) == 0.0);
  }

  TEST_CASE("commutator examples") {
    Rng rng(7);
    const SymTensor3 q = random_deviatoric(rng);
    CHECK(frobenius(commutator(Tensor3::identity(), q.mat())) == 0.0);
    CHECK(frobenius(commutator(Tensor3::diag(1, 2, 3), Tensor3::diag(4, 5, 6))) == 0.0);

    const auto d = decompose(plane_shear_grad());
    const Tensor3 sw = d.s.mat() * d.omega.mat();
    CHECK(frobenius(sw - Tensor3::diag(-0.25, 0.25, 0)) < 1e-16);
    CHECK(frobenius(commutator(d.s.mat(), d.omega.mat()) - Tensor3::diag(-0.5, 0.5, 0)) < 1e-16);
  }

  TEST_CASE("frobenius_norm_S examples") {
    CHECK(frobenius_norm_S(SymTensor3::zero()) == 0.0);
    CHECK(frobenius_norm_S(SymTensor3::diag(1, -1, 0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const auto d = decompose(plane_shear_grad());
    CHECK(frobenius_norm_S(d.s) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  }

  TEST_CASE("constructors: asymmetry tolerance") {
    Tensor3 nearly = Tensor3::diag(1, 2, 3);
    nearly(0, 1) = 0.5;
    nearly(1, 0) = 0.5 * (1.0 + 1e-14);  // inside tolerance: symmetrized
    CHECK_NOTHROW(SymTensor3{nearly});
    nearly(1, 0) = 0.5 * (1.0 + 1e-6);  // far outside: rejected
    CHECK_THROWS_AS(SymTensor3{nearly}, std::invalid_argument);

    Tensor3 notskew;
    notskew(0, 1) = 1.0;
    notskew(1, 0) = -1.0 + 1e-6;
    CHECK_THROWS_AS(SkewTensor3{notskew}, std::invalid_argument);
  }

  TEST_CASE("property: commutator traces vanish") {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
      auto [s, w] = random_unit_state(rng);
      CHECK(std::abs(trace(commutator(s.mat(), w.mat()))) < 1e-14);
      const SymTensor3 s2 = random_unit_deviatoric(rng);
      CHECK(std::abs(trace(commutator(s.mat(), s2.mat()))) < 1e-14);
    }
  }

  TEST_CASE("property: deviator idempotent and trace-free") {
    Rng rng(12);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
      Tensor3 q;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) q(a, b) = normal(rng);
      const Tensor3 d1 = deviator(q);
      CHECK(std::abs(trace(d1)) < 1e-14 * frobenius(q));
      CHECK(frobenius(deviator(d1) - d1) < 1e-15 * frobenius(q));
    }
  }

  TEST_CASE("property: decompose is linear") {
    Rng rng(13);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      Tensor3 g1, g2;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          g1(a, b) = normal(rng);
          g2(a, b) = normal(rng);
        }
      const double ca = normal(rng), cb = normal(rng);
      const auto dc = decompose(ca * g1 + cb * g2);
      const auto d1 = decompose(g1);
      const auto d2 = decompose(g2);
      const Tensor3 s_lin = ca * d1.s.mat() + cb * d2.s.mat();
      const Tensor3 w_lin = ca * d1.omega.mat() + cb * d2.omega.mat();
      const double scale = frobenius(dc.grad) + 1e-300;
      CHECK(frobenius(dc.s.mat() - s_lin) <= 1e-15 * scale);
      CHECK(frobenius(dc.omega.mat() - w_lin) <= 1e-15 * scale);
    }
  }

  TEST_CASE("property: Omega^2 symmetric negative semidefinite") {
    Rng rng(14);
    for (int i = 0; i < 500; ++i) {
      const SkewTensor3 w = random_skew(rng);
      const Tensor3 w2 = w.mat() * w.mat();
      CHECK(frobenius(w2 - transpose(w2)) < 1e-15 * (frobenius(w2) + 1e-300));
      const double wn = frobenius(w.mat());
      const auto eig = sym_eigenvalues(SymTensor3::symmetrize(w2));
      for (double e : eig) CHECK(e <= 1e-14 * wn * wn);
    }
  }

  TEST_CASE("sym_eigenvalues sanity") {
    const auto eig = sym_eigenvalues(SymTensor3::diag(3, -1, 2));
    CHECK(eig[0] == doctest::Approx(-1).epsilon(1e-14));
    CHECK(eig[1] == doctest::Approx(2).epsilon(1e-14));
    CHECK(eig[2] == doctest::Approx(3).epsilon(1e-14));
  }
}
