#include "sgs/registry.hpp"

#include <cstdio>
#include <map>
#include <stdexcept>

#include "sgs/sampling.hpp"

namespace sgs {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* kVNames[5] = {"v1", "v2", "v3", "v4", "v5"};

SingularityPolicy policy_from_config(KVConfig& cfg, const std::string& section) {
  SingularityPolicy p;
  const std::string mode = cfg.get_string(section + ".policy", "error");
  const double ref = cfg.get_double(section + ".policy_reference", 1.0);
  if (mode == "error") {
    p = SingularityPolicy::hard_error(ref);
  } else if (mode == "regularize") {
    p = SingularityPolicy::regularized(cfg.get_double(section + ".policy_epsilon", 1e-12 * ref), ref);
  } else {
    throw std::runtime_error("model policy must be 'error' or 'regularize', got '" + mode + "'");
  }
  return p;
}

}  // namespace

ScaledAlphaPoly random_scaled_alpha_poly(std::uint64_t seed, double scale) {
  Rng rng(mix_seed(seed, 42));
  std::normal_distribution<double> normal(0.0, scale);
  ScaledAlphaPoly p;
  for (auto& row : p.c)
    for (double& c : row) c = normal(rng);
  return p;
}

ClosureModel model_from_config(KVConfig& cfg, const std::string& section) {
  ClosureModel m;
  const std::string kind = cfg.require_string(section + ".kind");
  m.name = kind;
  m.policy = policy_from_config(cfg, section);

  if (kind == "none") {
    GeneralAlpha ga;  // all-zero coefficients: tau = 0
    m.form = ga;
  } else if (kind == "potential") {
    Potential pot;
    pot.g = g_from_config(cfg, section + ".g");
    m.form = pot;
  } else if (kind == "scaled-alpha") {
    ScaledAlphaPoly p;
    for (int i = 0; i < 7; ++i) {
      const std::string base = section + ".a" + std::to_string(i + 1);
      p.c[i][0] = cfg.get_double(base + ".const", 0.0);
      for (int j = 0; j < 5; ++j) p.c[i][j + 1] = cfg.get_double(base + "." + kVNames[j], 0.0);
    }
    m.form = make_scaled_alpha(p);
  } else if (kind == "scaled-alpha-random") {
    const auto seed = static_cast<std::uint64_t>(cfg.get_long(section + ".seed", 0));
    const double scale = cfg.get_double(section + ".scale", 0.3);
    m.form = make_scaled_alpha(random_scaled_alpha_poly(seed, scale));
    m.name = "scaled-alpha-random/" + std::to_string(seed);
  } else if (kind == "general-alpha") {
    GeneralAlpha ga;
    for (int i = 0; i < 7; ++i) {
      const std::string base = section + ".a" + std::to_string(i + 1);
      const double c0 = cfg.get_double(base + ".const", 0.0);
      const double ci1 = cfg.get_double(base + ".i1", 0.0);
      if (c0 != 0.0 || ci1 != 0.0)
        ga.alpha[i] = [c0, ci1](const InvariantSet& inv) { return c0 + ci1 * inv.i1; };
    }
    m.form = ga;
  } else if (kind == "smagorinsky") {
    Smagorinsky s;
    s.cs = cfg.get_double(section + ".cs", 0.17);
    s.delta = cfg.get_double(section + ".delta", 1.0);
    m.form = ReferenceModel{s};
  } else if (kind == "lund-novikov") {
    LundNovikov ln;
    ln.c1 = cfg.get_double(section + ".c1", 0.0);
    ln.c2 = cfg.get_double(section + ".c2", 0.0);
    ln.c3 = cfg.get_double(section + ".c3", 0.0);
    ln.c4 = cfg.get_double(section + ".c4", 0.0);
    ln.c5 = cfg.get_double(section + ".c5", 0.0);
    ln.delta = cfg.get_double(section + ".delta", 1.0);
    m.form = ReferenceModel{ln};
  } else if (kind == "kosovic") {
    Kosovic k;
    k.c1 = cfg.get_double(section + ".c1", 0.0);
    k.c2 = cfg.get_double(section + ".c2", 0.0);
    k.c4 = cfg.get_double(section + ".c4", 0.0);
    k.delta = cfg.get_double(section + ".delta", 1.0);
    m.form = ReferenceModel{k};
  } else if (kind == "rdh05") {
    Rdh05 r;
    r.nu = cfg.get_double(section + ".nu", 1.0);
    r.g0 = cfg.get_double(section + ".g0", 1.0);
    r.g1 = cfg.get_double(section + ".g1", 0.0);
    r.g2 = cfg.get_double(section + ".g2", 0.0);
    m.form = ReferenceModel{r};
  } else {
    throw std::runtime_error("unknown model kind '" + kind + "'");
  }
  return m;
}

std::string model_to_config(KVConfig& cfg, const std::string& section) {
  // canonical echo of the resolved section, sorted by key
  std::string out = "[" + section + "]\n";
  for (const std::string& key : cfg.keys_in(section)) {
    const std::string bare = key.substr(section.size() + 1);
    out += bare + " = " + cfg.get_string(key, "") + "\n";
  }
  return out;
}

GFunction g_from_config(KVConfig& cfg, const std::string& section) {
  PolyG c;
  c.c0 = cfg.get_double(section + ".c0", 0.0);
  c.c1 = cfg.get_double(section + ".c1", 0.0);
  c.c2 = cfg.get_double(section + ".c2", 0.0);
  c.l3 = cfg.get_double(section + ".l3", 0.0);
  c.l4 = cfg.get_double(section + ".l4", 0.0);
  c.q33 = cfg.get_double(section + ".q33", 0.0);
  c.q34 = cfg.get_double(section + ".q34", 0.0);
  c.q44 = cfg.get_double(section + ".q44", 0.0);
  return make_polynomial_g(c);
}

std::string g_to_config(const GFunction& g, const std::string& section) {
  if (g.family != "polynomial")
    throw std::runtime_error("g_to_config: only the polynomial family serializes");
  std::string out = "[" + section + "]\n";
  for (const auto& [k, v] : g.params) out += k + " = " + fmt(v) + "\n";
  return out;
}

std::string preset_config(const std::string& name) {
  static const std::map<std::string, std::string> presets = {
      {"linear-eddy-viscosity",
       "[model]\nkind = scaled-alpha\na1.const = -0.02\n"},
      {"th4",
       "[model]\nkind = scaled-alpha\n"
       "a1.const = -0.05\na1.v1 = 0.02\na1.v3 = 0.01\n"
       "a2.const = 0.03\na2.v4 = -0.01\n"
       "a3.const = 0.02\na3.v3 = 0.005\n"
       "a4.const = 0.015\na4.v5 = 0.01\n"
       "a5.const = 0.01\na5.v2 = 0.02\n"
       "a6.const = -0.012\n"
       "a7.const = 0.008\na7.v1 = -0.01\n"},
      {"th4-random", "[model]\nkind = scaled-alpha-random\nseed = 1\nscale = 0.3\n"},
      {"smagorinsky", "[model]\nkind = smagorinsky\ncs = 0.17\ndelta = 1\n"},
      {"lund-novikov",
       "[model]\nkind = lund-novikov\nc1 = -0.0578\nc2 = 0.026\nc3 = 0.011\n"
       "c4 = 0.016\nc5 = 0.009\ndelta = 1\n"},
      {"kosovic", "[model]\nkind = kosovic\nc1 = -0.0578\nc2 = 0.026\nc4 = 0.016\ndelta = 1\n"},
      {"rdh05", "[model]\nkind = rdh05\nnu = 0.001\ng0 = 0.5\ng1 = 0.1\ng2 = 0.2\n"},
      {"potential-quadratic",
       "[model]\nkind = potential\ng.c0 = 0.0005\ng.c2 = 0.0001\n"
       "g.q33 = 0.0001\ng.q44 = 0.0001\n"},
      {"const-g", "[g]\nc0 = 0.0005\n"},
      {"plane-shear", "[state]\ngrad = 0,1,0,0,0,0,0,0,0\n"},
      // v1-only generator: v1 is bounded, so the closure coefficients stay
      // O(nu) everywhere and the explicit solver tolerates them; v3/v4
      // dependence enters through coefficients ~ |Om|^2/|S|^k and spikes at
      // strain-free grid points
      {"tg16",
       "[grid]\nn = 16\nL = 6.2831853071795862\n"
       "[run]\nnu = 0.05\nsteps = 500\nic = taylor-green\nu0 = 1\nsample_every = 10\n"
       "[model]\nkind = potential\ng.c0 = 0.025\ng.c1 = 0.01\ng.c2 = 0.02\n"
       "[output]\nbudget = budget.csv\n"},
      {"tg16-viscous",
       "[grid]\nn = 16\nL = 6.2831853071795862\n"
       "[run]\nnu = 0.05\nsteps = 500\nic = taylor-green\nu0 = 1\nsample_every = 10\n"
       "[model]\nkind = none\n"
       "[output]\nbudget = budget.csv\n"},
      {"tg16-unstable-g",
       "[grid]\nn = 16\nL = 6.2831853071795862\n"
       "[run]\nnu = 0.05\nsteps = 500\nic = taylor-green\nu0 = 1\nsample_every = 10\n"
       "[model]\nkind = potential\ng.c0 = 0.1\n"
       "[output]\nbudget = budget.csv\n"},
  };
  auto it = presets.find(name);
  if (it == presets.end()) {
    std::string known;
    for (const auto& [k, v] : presets) known += known.empty() ? k : ", " + k;
    throw std::runtime_error("unknown preset '" + name + "'; known presets: " + known);
  }
  return it->second;
}

}  // namespace sgs
