#include "aniso/littlewood_paley.hpp"

#include <cmath>
#include <iomanip>
#include <stdexcept>

#include "aniso/spectral/fft.hpp"

namespace aniso::lp {

using spectral::cplx;
using spectral::Wavevector;

namespace {

// exp(-1/t) for t > 0, zero otherwise.
double bump_tail(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Smooth step rising from 0 at x <= 0 to 1 at x >= 1.
double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = bump_tail(x);
  const double b = bump_tail(1.0 - x);
  return a / (a + b);
}

spectral::Product combine(const Grid& grid, const std::vector<double>& samples) {
  double mean = 0.0;
  ScalarField f = spectral::to_spectral(grid, samples, &mean);
  return {spectral::truncate_to_dealias_set(f), mean};
}

}  // namespace

double DyadicPartition::chi(double tau) const {
  const double t = std::abs(tau);
  return 1.0 - smooth_step((t - chi_flat) / (chi_outer - chi_flat));
}

double DyadicPartition::phi(double tau) const {
  const double t = std::abs(tau);
  if (t < phi_inner || t > phi_outer) return 0.0;
  return chi(0.5 * t) - chi(t);
}

void DyadicPartition::write_csv(std::ostream& out, int samples, double tau_max) const {
  out << "tau,chi,phi\n" << std::setprecision(17);
  for (int i = 0; i < samples; ++i) {
    const double tau = tau_max * i / std::max(1, samples - 1);
    out << tau << ',' << chi(tau) << ',' << phi(tau) << '\n';
  }
}

const DyadicPartition& partition() {
  static const DyadicPartition p;
  return p;
}

ScalarField delta_h(const ScalarField& a, int k) {
  const double scale = std::ldexp(1.0, -k);
  return a.filtered(
      [scale](const Wavevector& w) { return partition().phi(scale * std::sqrt(w.horizontal_norm2())); });
}

ScalarField s_h(const ScalarField& a, int k) {
  const double scale = std::ldexp(1.0, -k);
  return a.filtered(
      [scale](const Wavevector& w) { return partition().chi(scale * std::sqrt(w.horizontal_norm2())); });
}

ScalarField horizontal_mean_part(const ScalarField& a) {
  return a.filtered([](const Wavevector& w) { return w.k1 == 0 && w.k2 == 0 ? 1.0 : 0.0; });
}

std::pair<int, int> dyadic_range(const Grid& grid) {
  // Lattice |xi_h| >= 1 and phi vanishes below 3/4, so k >= -1 suffices;
  // the top block must still see the largest |xi_h| above 3/4 * 2^k.
  const double top = grid.max_horizontal_wavenumber();
  const int k_hi = static_cast<int>(std::floor(std::log2(top / DyadicPartition::phi_inner)));
  return {-1, k_hi};
}

BandTriple band_split(const ScalarField& a, double lambda, double Lambda) {
  if (!(lambda >= 0.0) || !(Lambda >= lambda)) {
    throw std::invalid_argument("band_split requires 0 <= lambda <= Lambda");
  }
  const Grid& g = a.grid();
  std::vector<cplx> flat(g.size()), natural(g.size()), sharp(g.size());
  g.for_each_mode([&](std::size_t i, const Wavevector& k) {
    if (a[i] == cplx{}) return;
    const double kh = std::sqrt(k.horizontal_norm2());
    if (kh < lambda) {
      flat[i] = a[i];
    } else if (kh < Lambda) {
      natural[i] = a[i];
    } else {
      sharp[i] = a[i];
    }
  });
  return {ScalarField::from_trusted(g, std::move(flat)), ScalarField::from_trusted(g, std::move(natural)),
          ScalarField::from_trusted(g, std::move(sharp)), lambda, Lambda};
}

BonySplit bony_split(const ScalarField& a, const ScalarField& b) {
  spectral::require_same_grid(a.grid(), b.grid(), "bony_split");
  const Grid& g = a.grid();
  const auto [k_lo, k_hi] = dyadic_range(g);

  std::vector<double> low_high(g.size(), 0.0);
  std::vector<double> high_low(g.size(), 0.0);
  for (int k = k_lo; k <= k_hi; ++k) {
    const ScalarField db = delta_h(b, k);
    if (!db.is_zero()) {
      const auto lo = spectral::to_physical(s_h(a, k - 1));
      const auto hi = spectral::to_physical(db);
      for (std::size_t i = 0; i < g.size(); ++i) low_high[i] += lo[i] * hi[i];
    }
    const ScalarField da = delta_h(a, k);
    if (!da.is_zero()) {
      const auto lo = spectral::to_physical(s_h(b, k + 2));
      const auto hi = spectral::to_physical(da);
      for (std::size_t i = 0; i < g.size(); ++i) high_low[i] += lo[i] * hi[i];
    }
  }

  std::vector<double> means = spectral::to_physical(horizontal_mean_part(a));
  {
    const auto b0 = spectral::to_physical(horizontal_mean_part(b));
    for (std::size_t i = 0; i < g.size(); ++i) means[i] *= b0[i];
  }

  BonySplit out{combine(g, low_high), combine(g, high_low), combine(g, means), spectral::dealiased_product(a, b),
                0.0};
  const ScalarField residual = out.product.field - out.low_high.field - out.high_low.field - out.mean_mean.field;
  const double mean_residual = out.product.mean - out.low_high.mean - out.high_low.mean - out.mean_mean.mean;
  const double scale = spectral::l2_norm_squared(out.product.field) +
                       spectral::Grid::volume() * out.product.mean * out.product.mean;
  const double res2 = spectral::l2_norm_squared(residual) + spectral::Grid::volume() * mean_residual * mean_residual;
  out.unresolved_tail = scale > 0.0 ? std::sqrt(res2 / scale) : std::sqrt(res2);
  return out;
}

}  // namespace aniso::lp
