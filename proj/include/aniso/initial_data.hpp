#pragma once

#include <array>
#include <cstdint>

#include <json.hpp>

#include "aniso/spectral/field.hpp"

namespace aniso {

using spectral::Grid;
using spectral::ScalarField;
using spectral::VectorField;

/// v = (cos x1 sin x2, -sin x1 cos x2, 0). Exact solution e^{-2t} v.
VectorField init_taylor_green(const Grid& grid);

/// Arnold-Beltrami-Childress flow; curl v = v.
VectorField init_abc(const Grid& grid, double A, double B, double C);

/// 3D Taylor-Green vortex (cos x1 sin x2 cos x3, -sin x1 cos x2 cos x3, 0),
/// which is not a steady Euler flow.
VectorField init_taylor_green_3d(const Grid& grid);

struct RandomFieldSpec {
  double slope = -5.0 / 3.0;
  std::uint64_t seed = 1;
  double amplitude = 1.0;  ///< root-mean-square of |v|
  double k_min = 1.0;
  double k_max = 4.0;
  bool two_dimensional = false;  ///< x3-independent with v3 = 0
};

/// Random divergence-free field: |v(k)| ~ |k|^slope on the shell
/// k_min <= |k| <= k_max, seeded phases, then Leray projection.
VectorField init_random_divfree(const Grid& grid, const RandomFieldSpec& spec);

/// Manufactured self-similar profile v(x) = tau^{-1/2} V(x / sqrt(tau)),
/// V(eta) = i (eta x a) exp(-|eta|^2) on the Fourier side, sampled on the
/// lattice: v(k) = tau * i (sqrt(tau) k x a) exp(-tau |k|^2), truncated to
/// the 2/3-rule set.
VectorField self_similar_field(const Grid& grid, double tau, const std::array<double, 3>& a = {0.3, -0.5, 0.8});

/// Builds a field from a tagged JSON generator spec:
///   {"type": "taylor_green"} | {"type": "taylor_green_3d"}
///   {"type": "abc", "A":..,"B":..,"C":..}
///   {"type": "random", "slope":.., "seed":.., "amplitude":.., "k_min":.., "k_max":.., "two_dimensional":..}
///   {"type": "file", "path": ...}
/// Throws std::invalid_argument on a malformed spec.
VectorField make_initial_data(const Grid& grid, const nlohmann::json& spec);

/// Validates a generator spec without building the field.
void validate_initial_data(const nlohmann::json& spec);

}  // namespace aniso
