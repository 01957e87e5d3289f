#pragma once

#include <cstdint>
#include <random>

#include "aniso/spectral/field.hpp"

namespace aniso::spectral {

/// Seeded generator with a platform-independent uniform draw
/// (std::uniform_real_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Parameters of a band-limited random field: modes with
/// k_min <= |k| <= k_max (and |k_i| within the grid's retained set) get
/// amplitude |k|^slope times a uniform factor and a uniform phase.
struct BandSpec {
  double k_min = 1.0;
  double k_max = 4.0;
  double slope = -1.0;
  bool horizontal_only = false;  ///< restrict to k3 = 0 (x3-independent field)
};

/// Real, mean-zero random field in the 2/3-rule retained set normalized to
/// unit root-mean-square value. Wavevectors are visited in a
/// grid-independent order, so the same seed gives the same trigonometric
/// polynomial on every grid that resolves it.
ScalarField random_scalar_field(const Grid& grid, std::uint64_t seed, const BandSpec& band);

}  // namespace aniso::spectral
