#include <cmath>

#include "doctest.h"
#include "sgs/model_zoo.hpp"
#include "sgs/models.hpp"
#include "sgs/registry.hpp"
#include "sgs/sampling.hpp"
#include "sgs/symmetry.hpp"

using namespace sgs;

namespace {

VelGradDecomposition plane_shear() {
  Tensor3 g;
  g(0, 1) = 1.0;
  return decompose(g);
}

double rel(const SymTensor3& got, const SymTensor3& want) {
  return frobenius(got.mat() - want.mat()) / std::max(frobenius(want.mat()), 1e-30);
}

}  // namespace

TEST_SUITE("model_zoo") {
  TEST_CASE("smagorinsky at plane shear") {
    const auto d = plane_shear();
    const double cs = 0.17, delta = 1.0;
    const StressResult r = eval_reference(ReferenceModel{Smagorinsky{cs, delta}}, d.s, d.omega);
    const double sn = 1.0 / std::sqrt(2.0);
    const SymTensor3 want = (-2.0 * cs * cs * delta * delta * sn) * d.s;
    CHECK(rel(r.tau, want) < 1e-15);
    CHECK(r.coeff[0] == doctest::Approx(-2.0 * 0.0289 * sn).epsilon(1e-12));
  }

  TEST_CASE("lund-novikov with C2..C5 = 0 coincides with smagorinsky via C1 = -2 Cs^2") {
    const double cs = 0.17, delta = 0.8;
    LundNovikov ln;
    ln.c1 = -2.0 * cs * cs;
    ln.delta = delta;
    Rng rng(71);
    for (int i = 0; i < 50; ++i) {
      auto [s, w] = random_unit_state(rng);
      const SymTensor3 a = eval_reference(ReferenceModel{ln}, s, w).tau;
      const SymTensor3 b = eval_reference(ReferenceModel{Smagorinsky{cs, delta}}, s, w).tau;
      CHECK(rel(a, b) < 1e-14);
    }
  }

  TEST_CASE("kosovic is lund-novikov with C3 = C5 = 0") {
    Kosovic k{-0.06, 0.02, 0.015, 1.2};
    LundNovikov ln;
    ln.c1 = k.c1;
    ln.c2 = k.c2;
    ln.c4 = k.c4;
    ln.delta = k.delta;
    Rng rng(72);
    auto [s, w] = random_unit_state(rng);
    CHECK(rel(eval_reference(ReferenceModel{k}, s, w).tau,
              eval_reference(ReferenceModel{ln}, s, w).tau) < 1e-15);
  }

  TEST_CASE("rdh05 with constant g = 1 is 2 nu S") {
    Rdh05 r{0.004, 1.0, 0.0, 0.0};
    Rng rng(73);
    auto [s, w] = random_unit_state(rng);
    CHECK(rel(eval_reference(ReferenceModel{r}, s, w).tau, (2.0 * r.nu) * s) < 1e-14);
  }

  TEST_CASE("singular states: c5 and rdh05 terms reject S = 0 under hard error") {
    Tensor3 g;
    g(0, 1) = 1.0;
    g(1, 0) = -1.0;
    const SkewTensor3 w{g};
    LundNovikov ln;
    ln.c5 = 0.01;
    CHECK_THROWS_AS(eval_reference(ReferenceModel{ln}, SymTensor3::zero(), w), singular_state_error);
    CHECK_THROWS_AS(eval_reference(ReferenceModel{Rdh05{}}, SymTensor3::zero(), w), singular_state_error);
    // smagorinsky and c5-free lund-novikov are regular at S = 0
    CHECK_NOTHROW(eval_reference(ReferenceModel{Smagorinsky{}}, SymTensor3::zero(), w));
  }

  TEST_CASE("breakage: delta-bearing models fail the scaling group, pass rotations") {
    const ProbeEnsemble ensemble = default_probe_ensemble(100, 30, 4);
    KVConfig cfg = KVConfig::parse_string(preset_config("lund-novikov"));
    const ClosureModel ln = model_from_config(cfg);
    KVConfig cfg2 = KVConfig::parse_string(preset_config("smagorinsky"));
    const ClosureModel smag = model_from_config(cfg2);

    const std::vector<double> eps = {-0.5, -0.25, 0.25, 0.5};
    for (const ClosureModel* m : {&ln, &smag}) {
      const auto reports = group_defect_scan(*m, {GroupKind::scaling, GroupKind::rotation}, eps,
                                             ensemble, 1e-11, 4);
      CHECK(reports[0].group == GroupKind::scaling);
      CHECK_FALSE(reports[0].pass);
      CHECK(reports[0].max_defect >= 0.05);
      CHECK(reports[1].group == GroupKind::rotation);
      CHECK(reports[1].pass);
      CHECK(reports[1].max_defect <= 1e-11);
    }
  }

  TEST_CASE("breakage: scale-invariant family passes all five groups") {
    const ProbeEnsemble ensemble = default_probe_ensemble(101, 20, 4);
    KVConfig cfg = KVConfig::parse_string(preset_config("th4"));
    const ClosureModel th4 = model_from_config(cfg);
    const std::vector<GroupKind> all = {GroupKind::time_shift, GroupKind::galilean, GroupKind::rotation,
                                        GroupKind::pressure_shift, GroupKind::scaling};
    for (const auto& rep : group_defect_scan(th4, all, {-0.5, 0.3, 0.7}, ensemble, 1e-11, 5)) {
      CHECK(rep.pass);
      CHECK(rep.max_defect <= 1e-11);
    }
  }

  TEST_CASE("breakage: rdh05 passes all five groups") {
    const ProbeEnsemble ensemble = default_probe_ensemble(102, 20, 4);
    KVConfig cfg = KVConfig::parse_string(preset_config("rdh05"));
    const ClosureModel m = model_from_config(cfg);
    const std::vector<GroupKind> all = {GroupKind::time_shift, GroupKind::galilean, GroupKind::rotation,
                                        GroupKind::pressure_shift, GroupKind::scaling};
    for (const auto& rep : group_defect_scan(m, all, {-0.4, 0.5}, ensemble, 1e-11, 6)) {
      CHECK(rep.pass);
    }
  }
}
