#pragma once

// Named parametric model forms and their config-format serialization.
// Arbitrary coefficient callables stay a library-level feature; everything
// the CLI runs goes through here so that runs are reproducible from
// config + seed alone.

#include <cstdint>
#include <string>

#include "sgs/config.hpp"
#include "sgs/g_function.hpp"
#include "sgs/models.hpp"

namespace sgs {

/// Affine random coefficients a_i^0 = c0 + sum_j c_j v_j, c ~ N(0, scale^2).
ScaledAlphaPoly random_scaled_alpha_poly(std::uint64_t seed, double scale = 0.3);

/// Build a closure from the [model] section of a config. Understood kinds:
/// none, potential, scaled-alpha, scaled-alpha-random, general-alpha,
/// smagorinsky, lund-novikov, kosovic, rdh05.
ClosureModel model_from_config(KVConfig& cfg, const std::string& section = "model");

/// Canonical config text for a registry model section (round-trips through
/// model_from_config).
std::string model_to_config(KVConfig& cfg, const std::string& section = "model");

/// GFunction from a [g]-style section (polynomial family keys c0..q44).
GFunction g_from_config(KVConfig& cfg, const std::string& section = "g");

std::string g_to_config(const GFunction& g, const std::string& section = "g");

/// Embedded preset configs by name (model presets and simulation presets).
/// Throws listing the known names when `name` is unknown.
std::string preset_config(const std::string& name);

}  // namespace sgs
