#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "aniso/spectral/field.hpp"

namespace aniso::corpus {

using spectral::Grid;
using spectral::ScalarField;
using spectral::VectorField;

constexpr std::uint64_t kDefaultSeed = 20240611;
inline constexpr double kSlopes[3] = {-1.0, -5.0 / 3.0, -3.0};

/// Field i of a corpus: slope kSlopes[i % 3], seed base + i, unit RMS,
/// shell 1 <= |k| <= k_max (default: k_c of the grid). The coefficients
/// depend only on the member and the shell, not on the grid.
struct Member {
  int index = 0;
  double slope = 0.0;
  std::uint64_t seed = 0;
};

Member member(int index, std::uint64_t base_seed);
VectorField field(const Grid& grid, const Member& m, std::optional<double> k_max = std::nullopt);
/// x3-independent scalar field (one horizontal slice repeated), shell
/// 1 <= |xi_h| <= k_max.
ScalarField planar_field(const Grid& grid, const Member& m, double k_max);

/// Calls fn(i) for i in [0, count) on `threads` workers. Results must be
/// written by index; the call returns after every index is done.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace aniso::corpus
