#pragma once

// Reference closures from the LES literature, kept for side-by-side
// symmetry-breakage comparisons. The grid spacing Delta is a numerical
// parameter, not a field: group actions leave it untouched, which is
// exactly why Delta-bearing models break the space-time scaling group.

#include <string>
#include <variant>

#include "sgs/tensor.hpp"

namespace sgs {

/// tau^d = -2 (Cs Delta)^2 |S| S
struct Smagorinsky {
  double cs = 0.17;
  double delta = 1.0;
};

/// tau^d = C1 |S| D^2 S + C2 D^2 (S^2)^d + C3 D^2 (Om^2)^d
///       + C4 D^2 [S,Om] + (C5/|S|) D^2 [S^2,Om]
struct LundNovikov {
  double c1 = 0, c2 = 0, c3 = 0, c4 = 0, c5 = 0;
  double delta = 1.0;
};

/// Lund-Novikov with C3 = C5 = 0.
struct Kosovic {
  double c1 = 0, c2 = 0, c4 = 0;
  double delta = 1.0;
};

/// Strain-only scale-invariant closure with explicit viscosity factor:
/// tau^d = nu (2 g(v1) - 3 v1 g'(v1)) S + (3 nu / |S|) g'(v1) (S^2)^d,
/// g(v1) = g0 + g1 v1 + g2 v1^2.
struct Rdh05 {
  double nu = 1.0;
  double g0 = 1.0, g1 = 0.0, g2 = 0.0;
};

struct ReferenceModel {
  std::variant<Smagorinsky, LundNovikov, Kosovic, Rdh05> kind;
  std::string name() const;
};

}  // namespace sgs
