#include <doctest.h>

#include <cmath>
#include <random>

#include "aniso/littlewood_paley.hpp"
#include "aniso/spectral/random.hpp"
#include "oracles.hpp"

using namespace aniso;
using namespace aniso::spectral;

namespace {

double max_diff(const ScalarField& a, const ScalarField& b) {
  double worst = 0.0;
  for (std::size_t n = 0; n < a.grid().size(); ++n) worst = std::max(worst, std::abs(a[n] - b[n]));
  return worst;
}

}  // namespace

TEST_CASE("partition of unity at sampled tau") {
  const auto& p = lp::partition();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_tau(std::log(1e-3), std::log(1e4));
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const double tau = std::exp(log_tau(rng));
    double s = p.chi(tau);
    for (int j = 0; j < 64; ++j) s += p.phi(std::ldexp(tau, -j));
    worst = std::max(worst, std::abs(s - 1.0));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("partition supports") {
  const auto& p = lp::partition();
  CHECK(p.chi(0.0) == 1.0);
  CHECK(p.chi(0.75) == 1.0);
  CHECK(p.chi(4.0 / 3.0) == 0.0);
  CHECK(p.chi(-0.5) == 1.0);
  CHECK(p.phi(0.7) == 0.0);
  CHECK(p.phi(2.7) == 0.0);
  CHECK(p.phi(1.5) == doctest::Approx(1.0));
  for (double t = 0.0; t < 4.0; t += 0.01) {
    CHECK(p.chi(t) >= 0.0);
    CHECK(p.chi(t) <= 1.0);
    CHECK(p.phi(t) >= 0.0);
  }
}

TEST_CASE("dyadic range of a cube") {
  const auto [lo, hi] = lp::dyadic_range(Grid::cube(32));
  CHECK(lo == -1);
  // max |xi_h| = 15 sqrt 2 and 0.75 * 2^4 < 15 sqrt 2 < 0.75 * 2^5
  CHECK(hi == 4);
}

TEST_CASE("dyadic blocks reconstruct the field") {
  const Grid g = Grid::cube(32);
  const ScalarField a = random_scalar_field(g, 11, {1.0, 15.0, -1.0, false});
  const auto [lo, hi] = lp::dyadic_range(g);
  ScalarField sum = lp::horizontal_mean_part(a);
  for (int k = lo; k <= hi; ++k) sum = sum + lp::delta_h(a, k);
  CHECK(max_diff(sum, a) <= 1e-12 * a.max_amplitude());
}

TEST_CASE("a single block isolates a lattice ring") {
  const Grid g = Grid::cube(16);
  // 2^-k |xi_h| in [4/3, 3/2] puts the mode where phi = 1 for one k only.
  const ScalarField a = oracle::field(g, {{{1, 1, 2}, {0.5, 0.0}}});
  CHECK(max_diff(lp::delta_h(a, 0), a) <= 1e-15);
  CHECK(lp::delta_h(a, 1).is_zero());
  CHECK(lp::delta_h(a, -1).is_zero());
}

TEST_CASE("Bony split of two separated modes") {
  const Grid g(64, 64, 8);
  const ScalarField a = oracle::field(g, {{{1, 0, 0}, {0.5, 0.0}}});
  const ScalarField b = oracle::field(g, {{{16, 0, 0}, {0.5, 0.0}}});
  const auto split = lp::bony_split(a, b);
  CHECK(split.high_low.field.is_zero());
  CHECK(split.mean_mean.field.is_zero());

  const auto exact = oracle::convolve(a, b);
  double worst = 0.0;
  for (const auto& [key, c] : exact) {
    const auto [k1, k2, k3] = key;
    worst = std::max(worst, std::abs(split.low_high.field.coeff({k1, k2, k3}) - c));
  }
  CHECK(worst <= 1e-15);
  CHECK(split.unresolved_tail <= 1e-14);
}

TEST_CASE("Bony pieces sum to the product") {
  const Grid g = Grid::cube(32);
  const ScalarField a = random_scalar_field(g, 3, {1.0, 10.0, -5.0 / 3.0, false});
  const ScalarField b = random_scalar_field(g, 4, {1.0, 10.0, -1.0, false});
  const auto split = lp::bony_split(a, b);
  const ScalarField residual = split.product.field - split.low_high.field - split.high_low.field - split.mean_mean.field;
  CHECK(std::sqrt(l2_norm_squared(residual) / l2_norm_squared(split.product.field)) <= 1e-12);
  CHECK(split.unresolved_tail <= 1e-12);
}

TEST_CASE("band split") {
  const Grid g = Grid::cube(16);
  const ScalarField a = oracle::field(g, {{{1, 0, 1}, {1.0, 0.0}}, {{3, 0, 0}, {0.0, 1.0}}, {{4, 3, 2}, {2.0, 1.0}}});
  const auto bands = lp::band_split(a, 2.0, 5.0);
  CHECK(bands.flat.coeff({1, 0, 1}) == cplx(1.0, 0.0));
  CHECK(bands.natural.coeff({3, 0, 0}) == cplx(0.0, 1.0));
  // |xi_h| = 5 belongs to the sharp band
  CHECK(bands.sharp.coeff({4, 3, 2}) == cplx(2.0, 1.0));
  CHECK(max_diff(bands.flat + bands.natural + bands.sharp, a) == 0.0);
  CHECK(lp::band_split(a, 3.0, 3.0).natural.is_zero());
  CHECK_THROWS_AS(lp::band_split(a, 4.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(lp::band_split(a, -1.0, 3.0), std::invalid_argument);
}
