#include "aniso/spectral/random.hpp"

#include <cmath>
#include <numbers>

#include "aniso/spectral/ops.hpp"

namespace aniso::spectral {

namespace {

bool upper_half(int k1, int k2, int k3) {
  return k3 > 0 || (k3 == 0 && k2 > 0) || (k3 == 0 && k2 == 0 && k1 > 0);
}

}  // namespace

ScalarField random_scalar_field(const Grid& grid, std::uint64_t seed, const BandSpec& band) {
  Rng rng(seed);
  std::vector<cplx> c(grid.size());
  const int reach = static_cast<int>(std::ceil(band.k_max));
  const int k3_reach = band.horizontal_only ? 0 : reach;
  for (int k3 = -k3_reach; k3 <= k3_reach; ++k3) {
    for (int k2 = -reach; k2 <= reach; ++k2) {
      for (int k1 = -reach; k1 <= reach; ++k1) {
        if (!upper_half(k1, k2, k3)) continue;
        const double r = rng.uniform(0.5, 1.0);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const Wavevector k{k1, k2, k3};
        const double kn = std::sqrt(k.norm2());
        if (kn < band.k_min || kn > band.k_max || !grid.in_dealias_set(k)) continue;
        const cplx value = std::polar(r * std::pow(kn, band.slope), phase);
        c[grid.index(grid.storage_index(0, k1), grid.storage_index(1, k2), grid.storage_index(2, k3))] = value;
        c[grid.index(grid.storage_index(0, -k1), grid.storage_index(1, -k2), grid.storage_index(2, -k3))] =
            std::conj(value);
      }
    }
  }
  ScalarField f = ScalarField::from_trusted(grid, std::move(c));
  const double rms = std::sqrt(l2_norm_squared(f) / Grid::volume());
  return rms > 0.0 ? f * (1.0 / rms) : f;
}

}  // namespace aniso::spectral
