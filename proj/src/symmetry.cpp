#include "sgs/symmetry.hpp"

#include <cmath>
#include <memory>

#include "sgs/sampling.hpp"

namespace sgs {

GroupKind kind_of(const GroupElement& g) {
  return std::visit(
      [](const auto& el) {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, TimeShift>) return GroupKind::time_shift;
        else if constexpr (std::is_same_v<T, Galilean>) return GroupKind::galilean;
        else if constexpr (std::is_same_v<T, RotationEl>) return GroupKind::rotation;
        else if constexpr (std::is_same_v<T, PressureShift>) return GroupKind::pressure_shift;
        else return GroupKind::scaling;
      },
      g);
}

std::string kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::time_shift: return "time-shift";
    case GroupKind::galilean: return "galilean";
    case GroupKind::rotation: return "rotation";
    case GroupKind::pressure_shift: return "pressure-shift";
    case GroupKind::scaling: return "scaling";
  }
  return "?";
}

RotationEl make_rotation(const Tensor3& r) {
  const Tensor3 gram = r * transpose(r) - Tensor3::identity();
  if (frobenius(gram) > 1e-12) throw std::invalid_argument("make_rotation: R R^T != Id");
  if (det(r) <= 0.0) throw std::invalid_argument("make_rotation: det R <= 0");
  return RotationEl{r};
}

SpacetimePoint map_event(const GroupElement& g, const SpacetimePoint& e) {
  return std::visit(
      [&](const auto& el) -> SpacetimePoint {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, TimeShift>) {
          return {e.t + el.eps, e.x};
        } else if constexpr (std::is_same_v<T, Galilean>) {
          return {e.t, e.x + el.alpha.eval(e.t)};
        } else if constexpr (std::is_same_v<T, RotationEl>) {
          return {e.t, el.r * e.x};
        } else if constexpr (std::is_same_v<T, PressureShift>) {
          return e;
        } else {
          return {std::exp(2.0 * el.eps) * e.t, std::exp(el.eps) * e.x};
        }
      },
      g);
}

AnalyticField act_on_field(const GroupElement& g, const AnalyticField& f) {
  AnalyticField out = f;
  std::visit(
      [&](const auto& el) {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, TimeShift>) {
          const double eps = el.eps;
          out.u = [f, eps](double t, const Vec3& x) { return f.u(t - eps, x); };
          out.grad_u = [f, eps](double t, const Vec3& x) { return f.grad_u(t - eps, x); };
          out.p = [f, eps](double t, const Vec3& x) { return f.p(t - eps, x); };
        } else if constexpr (std::is_same_v<T, Galilean>) {
          const PolyVec3 a = el.alpha;
          const double rho = f.rho;
          out.u = [f, a](double t, const Vec3& x) { return f.u(t, x - a.eval(t)) + a.d1(t); };
          out.grad_u = [f, a](double t, const Vec3& x) { return f.grad_u(t, x - a.eval(t)); };
          // the inertial correction -rho a''(t).x is written in the original
          // frame coordinate x = x_hat - a(t)
          out.p = [f, a, rho](double t, const Vec3& x) {
            const Vec3 x0 = x - a.eval(t);
            return f.p(t, x0) - rho * dot(a.d2(t), x0);
          };
        } else if constexpr (std::is_same_v<T, RotationEl>) {
          const Tensor3 r = el.r;
          const Tensor3 rt = transpose(el.r);
          out.u = [f, r, rt](double t, const Vec3& x) { return r * f.u(t, rt * x); };
          out.grad_u = [f, r, rt](double t, const Vec3& x) { return r * f.grad_u(t, rt * x) * rt; };
          out.p = [f, rt](double t, const Vec3& x) { return f.p(t, rt * x); };
        } else if constexpr (std::is_same_v<T, PressureShift>) {
          const Poly4 xi = el.xi;
          out.p = [f, xi](double t, const Vec3& x) { return f.p(t, x) + xi.eval(t); };
        } else {
          const double eu = std::exp(-el.eps);
          const double et = std::exp(-2.0 * el.eps);
          out.u = [f, eu, et](double t, const Vec3& x) { return eu * f.u(et * t, eu * x); };
          out.grad_u = [f, eu, et](double t, const Vec3& x) { return et * f.grad_u(et * t, eu * x); };
          out.p = [f, eu, et](double t, const Vec3& x) { return et * f.p(et * t, eu * x); };
        }
      },
      g);
  return out;
}

SymTensor3 InducedTransform::apply(const SymTensor3& tau) const {
  switch (law) {
    case Law::identity: return tau;
    case Law::conjugate: return SymTensor3::symmetrize(r * tau.mat() * transpose(r));
    case Law::scale: return factor * tau;
  }
  return tau;
}

namespace {

InducedTransform law_of(const GroupElement& g) {
  InducedTransform t;
  if (const auto* rot = std::get_if<RotationEl>(&g)) {
    t.law = InducedTransform::Law::conjugate;
    t.r = rot->r;
  } else if (const auto* sc = std::get_if<ScalingEl>(&g)) {
    t.law = InducedTransform::Law::scale;
    t.factor = std::exp(-2.0 * sc->eps);
  }
  return t;
}

}  // namespace

InducedTransform induced_state_transform(const GroupElement& g, const SymTensor3& s,
                                         const SkewTensor3& omega) {
  InducedTransform t = law_of(g);
  switch (t.law) {
    case InducedTransform::Law::identity:
      t.s = s;
      t.omega = omega;
      break;
    case InducedTransform::Law::conjugate: {
      const Tensor3 rt = transpose(t.r);
      t.s = SymTensor3::symmetrize(t.r * s.mat() * rt);
      t.omega = SkewTensor3::antisymmetrize(t.r * omega.mat() * rt);
      break;
    }
    case InducedTransform::Law::scale:
      t.s = t.factor * s;
      t.omega = t.factor * omega;
      break;
  }
  return t;
}

// ---- probe ensembles ------------------------------------------------------

AnalyticField plane_shear_field(double rate) {
  AnalyticField f;
  f.name = "plane-shear";
  f.u = [rate](double, const Vec3& x) -> Vec3 { return {rate * x[1], 0, 0}; };
  f.grad_u = [rate](double, const Vec3&) {
    Tensor3 g;
    g(0, 1) = rate;
    return g;
  };
  f.p = [](double, const Vec3&) { return 0.0; };
  f.divergence_free = true;
  return f;
}

AnalyticField solid_rotation_field(double rate) {
  AnalyticField f;
  f.name = "solid-rotation";
  f.u = [rate](double, const Vec3& x) -> Vec3 { return {-rate * x[1], rate * x[0], 0}; };
  f.grad_u = [rate](double, const Vec3&) {
    Tensor3 g;
    g(0, 1) = -rate;
    g(1, 0) = rate;
    return g;
  };
  f.p = [rate](double, const Vec3& x) { return 0.5 * rate * rate * (x[0] * x[0] + x[1] * x[1]); };
  f.divergence_free = true;
  return f;
}

AnalyticField taylor_green_field(double u0, double sigma) {
  AnalyticField f;
  f.name = "taylor-green";
  f.u = [u0, sigma](double t, const Vec3& x) -> Vec3 {
    const double a = u0 * std::exp(-sigma * t);
    return {a * std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2]),
            -a * std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2]), 0.0};
  };
  f.grad_u = [u0, sigma](double t, const Vec3& x) {
    const double a = u0 * std::exp(-sigma * t);
    const double sx = std::sin(x[0]), cx = std::cos(x[0]);
    const double sy = std::sin(x[1]), cy = std::cos(x[1]);
    const double sz = std::sin(x[2]), cz = std::cos(x[2]);
    Tensor3 g;
    g(0, 0) = a * cx * cy * cz;
    g(0, 1) = -a * sx * sy * cz;
    g(0, 2) = -a * sx * cy * sz;
    g(1, 0) = a * sx * sy * cz;
    g(1, 1) = -a * cx * cy * cz;
    g(1, 2) = a * cx * sy * sz;
    return g;
  };
  f.p = [u0, sigma](double t, const Vec3& x) {
    const double a = u0 * std::exp(-sigma * t);
    return a * a / 16.0 * (std::cos(2 * x[0]) + std::cos(2 * x[1])) * (std::cos(2 * x[2]) + 2.0);
  };
  f.divergence_free = true;
  return f;
}

AnalyticField abc_field(double a, double b, double c) {
  AnalyticField f;
  f.name = "abc";
  f.u = [a, b, c](double, const Vec3& x) -> Vec3 {
    return {a * std::sin(x[2]) + c * std::cos(x[1]), b * std::sin(x[0]) + a * std::cos(x[2]),
            c * std::sin(x[1]) + b * std::cos(x[0])};
  };
  f.grad_u = [a, b, c](double, const Vec3& x) {
    Tensor3 g;
    g(0, 1) = -c * std::sin(x[1]);
    g(0, 2) = a * std::cos(x[2]);
    g(1, 0) = b * std::cos(x[0]);
    g(1, 2) = -a * std::sin(x[2]);
    g(2, 0) = -b * std::sin(x[0]);
    g(2, 1) = c * std::cos(x[1]);
    return g;
  };
  f.p = [](double, const Vec3&) { return 0.0; };
  f.divergence_free = true;
  return f;
}

AnalyticField random_solenoidal_field(std::uint64_t seed, int modes) {
  struct Mode {
    Vec3 k;
    Vec3 a;
    double phase;
    double omega;
  };
  auto mode_list = std::make_shared<std::vector<Mode>>();
  Rng rng(mix_seed(seed, 77));
  std::uniform_int_distribution<int> ki(-2, 2);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uphase(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> uomega(-1.0, 1.0);
  while (static_cast<int>(mode_list->size()) < modes) {
    Vec3 k = {double(ki(rng)), double(ki(rng)), double(ki(rng))};
    const double k2 = dot(k, k);
    if (k2 == 0.0) continue;
    Vec3 b = {normal(rng), normal(rng), normal(rng)};
    Vec3 a = b - (dot(b, k) / k2) * k;  // a . k = 0 keeps the mode solenoidal
    if (norm(a) < 1e-3) continue;
    a = (1.0 / (norm(a) * modes)) * a;
    mode_list->push_back({k, a, uphase(rng), uomega(rng)});
  }
  AnalyticField f;
  f.name = "random-solenoidal";
  f.u = [mode_list](double t, const Vec3& x) {
    Vec3 u = {0, 0, 0};
    for (const auto& m : *mode_list) u = u + std::cos(dot(m.k, x) + m.phase + m.omega * t) * m.a;
    return u;
  };
  f.grad_u = [mode_list](double t, const Vec3& x) {
    Tensor3 g;
    for (const auto& m : *mode_list) {
      const double s = -std::sin(dot(m.k, x) + m.phase + m.omega * t);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) += s * m.a[i] * m.k[j];
    }
    return g;
  };
  f.p = [](double, const Vec3&) { return 0.0; };
  f.divergence_free = true;
  return f;
}

ProbeEnsemble default_probe_ensemble(std::uint64_t seed, int n_states, int points_per_field) {
  ProbeEnsemble e;
  Rng rng(mix_seed(seed, 1));
  for (int i = 0; i < n_states; ++i) e.states.push_back(random_unit_state(rng));

  std::vector<AnalyticField> fields = {plane_shear_field(),
                                       solid_rotation_field(),
                                       taylor_green_field(1.0, 0.3),
                                       abc_field(1.0, 0.7, 0.43),
                                       random_solenoidal_field(mix_seed(seed, 2)),
                                       random_solenoidal_field(mix_seed(seed, 3))};
  std::uniform_real_distribution<double> ut(-0.5, 1.5);
  std::uniform_real_distribution<double> ux(-M_PI, M_PI);
  for (auto& f : fields) {
    std::vector<SpacetimePoint> pts;
    for (int i = 0; i < points_per_field; ++i) pts.push_back({ut(rng), {ux(rng), ux(rng), ux(rng)}});
    e.fields.emplace_back(std::move(f), std::move(pts));
  }
  return e;
}

GroupElement random_group_element(GroupKind k, std::uint64_t seed, double eps) {
  Rng rng(mix_seed(seed, 11));
  std::normal_distribution<double> normal(0.0, 1.0);
  switch (k) {
    case GroupKind::time_shift:
      return TimeShift{eps};
    case GroupKind::galilean: {
      Galilean g;
      for (auto& poly : g.alpha.comp)
        for (double& c : poly.c) c = eps * normal(rng);
      return g;
    }
    case GroupKind::rotation: {
      // angle eps about a random axis
      Vec3 axis = {normal(rng), normal(rng), normal(rng)};
      const double n = norm(axis);
      axis = (1.0 / (n > 1e-12 ? n : 1.0)) * axis;
      const double c = std::cos(eps), s = std::sin(eps);
      Tensor3 r;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = (i == j ? c : 0.0) + (1 - c) * axis[i] * axis[j];
      r(0, 1) -= s * axis[2];
      r(0, 2) += s * axis[1];
      r(1, 0) += s * axis[2];
      r(1, 2) -= s * axis[0];
      r(2, 0) -= s * axis[1];
      r(2, 1) += s * axis[0];
      return RotationEl{r};
    }
    case GroupKind::pressure_shift: {
      PressureShift p;
      for (double& c : p.xi.c) c = eps * normal(rng);
      return p;
    }
    case GroupKind::scaling:
      return ScalingEl{eps};
  }
  return TimeShift{0};
}

// ---- defect measurement ---------------------------------------------------

namespace {

void accumulate(DefectStats& st, double defect) {
  st.max_defect = std::max(st.max_defect, defect);
  st.mean_defect += defect;
  ++st.count;
}

void finalize(DefectStats& st) {
  if (st.count > 0) st.mean_defect /= st.count;
}

double relative_defect(const SymTensor3& got, const SymTensor3& expected) {
  const double den = std::max(frobenius_norm_S(expected), 1e-30);
  return frobenius_norm_S(got - expected) / den;
}

}  // namespace

DefectStats equivariance_defect(const ClosureModel& model, const GroupElement& g,
                                const std::vector<std::pair<SymTensor3, SkewTensor3>>& states) {
  DefectStats st;
  for (const auto& [s, w] : states) {
    try {
      const InducedTransform tr = induced_state_transform(g, s, w);
      const SymTensor3 tau = eval(model, s, w).tau;
      const SymTensor3 expected = tr.apply(tau);
      const SymTensor3 got = eval(model, tr.s, tr.omega).tau;
      accumulate(st, relative_defect(got, expected));
    } catch (const singular_state_error&) {
      ++st.skipped;
    }
  }
  finalize(st);
  return st;
}

DefectStats equivariance_defect_field(const ClosureModel& model, const GroupElement& g,
                                      const AnalyticField& f,
                                      const std::vector<SpacetimePoint>& events) {
  DefectStats st;
  const AnalyticField fhat = act_on_field(g, f);
  const InducedTransform law = law_of(g);
  for (const SpacetimePoint& ev : events) {
    try {
      const VelGradDecomposition d = decompose(f.grad_u(ev.t, ev.x));
      const SymTensor3 tau = eval(model, d.s, d.omega).tau;
      const SymTensor3 expected = law.apply(tau);
      const SpacetimePoint evhat = map_event(g, ev);
      const VelGradDecomposition dh = decompose(fhat.grad_u(evhat.t, evhat.x));
      const SymTensor3 got = eval(model, dh.s, dh.omega).tau;
      accumulate(st, relative_defect(got, expected));
    } catch (const singular_state_error&) {
      ++st.skipped;
    }
  }
  finalize(st);
  return st;
}

DefectStats equivariance_defect(const ClosureModel& model, const GroupElement& g,
                                const ProbeEnsemble& ensemble) {
  DefectStats st = equivariance_defect(model, g, ensemble.states);
  double sum = st.mean_defect * st.count;
  for (const auto& [field, events] : ensemble.fields) {
    const DefectStats fs = equivariance_defect_field(model, g, field, events);
    st.max_defect = std::max(st.max_defect, fs.max_defect);
    sum += fs.mean_defect * fs.count;
    st.count += fs.count;
    st.skipped += fs.skipped;
  }
  st.mean_defect = st.count > 0 ? sum / st.count : 0.0;
  return st;
}

std::vector<GroupDefectReport> group_defect_scan(const ClosureModel& model,
                                                 const std::vector<GroupKind>& groups,
                                                 const std::vector<double>& eps_grid,
                                                 const ProbeEnsemble& ensemble, double tolerance,
                                                 std::uint64_t seed) {
  std::vector<GroupDefectReport> reports;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    GroupDefectReport rep;
    rep.group = groups[gi];
    rep.eps_grid = eps_grid;
    rep.tolerance = tolerance;
    double sum = 0;
    long count = 0;
    for (std::size_t ei = 0; ei < eps_grid.size(); ++ei) {
      DefectStats combined;
      double esum = 0;
      for (int rep_i = 0; rep_i < 2; ++rep_i) {
        const GroupElement el =
            random_group_element(groups[gi], mix_seed(seed, 1000 * gi + 10 * ei + rep_i), eps_grid[ei]);
        const DefectStats st = equivariance_defect(model, el, ensemble);
        combined.max_defect = std::max(combined.max_defect, st.max_defect);
        esum += st.mean_defect * st.count;
        combined.count += st.count;
        combined.skipped += st.skipped;
      }
      combined.mean_defect = combined.count > 0 ? esum / combined.count : 0.0;
      rep.per_eps.push_back(combined);
      rep.max_defect = std::max(rep.max_defect, combined.max_defect);
      sum += esum;
      count += combined.count;
    }
    rep.mean_defect = count > 0 ? sum / count : 0.0;
    rep.pass = rep.max_defect <= tolerance;
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace sgs
