#include "aniso/spectral/ops.hpp"

#include <stdexcept>

#include "aniso/spectral/fft.hpp"

namespace aniso::spectral {

std::vector<double> to_physical(const ScalarField& f) { return fft::synthesize(f.grid(), f.coeffs()); }

std::vector<double> to_physical(const ScalarField& f, const Grid& oversampled) {
  return fft::synthesize(f.grid(), f.coeffs(), oversampled);
}

ScalarField to_spectral(const Grid& grid, std::span<const double> samples, double* mean) {
  std::vector<cplx> c = fft::analyze(grid, samples);
  if (mean != nullptr) *mean = c[0].real();
  c[0] = cplx{};
  grid.for_each_mode([&](std::size_t i, const Wavevector& k) {
    if (grid.on_nyquist(k)) c[i] = cplx{};
  });
  return ScalarField::from_coefficients(grid, std::move(c));
}

ScalarField derivative(const ScalarField& f, int axis) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("derivative axis must be 1, 2 or 3");
  const Grid& g = f.grid();
  std::vector<cplx> out(g.size());
  g.for_each_mode([&](std::size_t i, const Wavevector& k) {
    if (f[i] == cplx{}) return;
    out[i] = cplx(0.0, double(k[axis - 1])) * f[i];
  });
  return ScalarField::from_trusted(g, std::move(out));
}

VectorField leray_project(const VectorField& v) {
  const Grid& g = v.grid();
  std::vector<cplx> p1(g.size()), p2(g.size()), p3(g.size());
  g.for_each_mode([&](std::size_t i, const Wavevector& k) {
    if (k.is_zero()) return;
    const cplx a = v[0][i], b = v[1][i], c = v[2][i];
    const cplx kdotv = double(k.k1) * a + double(k.k2) * b + double(k.k3) * c;
    const cplx s = kdotv / k.norm2();
    p1[i] = a - double(k.k1) * s;
    p2[i] = b - double(k.k2) * s;
    p3[i] = c - double(k.k3) * s;
  });
  return VectorField::certified(ScalarField::from_trusted(g, std::move(p1)),
                                ScalarField::from_trusted(g, std::move(p2)),
                                ScalarField::from_trusted(g, std::move(p3)));
}

ScalarField divergence(const VectorField& v) {
  return derivative(v[0], 1) + derivative(v[1], 2) + derivative(v[2], 3);
}

ScalarField truncate_to_dealias_set(const ScalarField& f) {
  const Grid& g = f.grid();
  return f.filtered([&g](const Wavevector& k) { return g.in_dealias_set(k) ? 1.0 : 0.0; });
}

Product dealiased_product(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid(), g.grid(), "dealiased_product");
  const Grid& grid = f.grid();
  std::vector<double> a = to_physical(f);
  const std::vector<double> b = to_physical(g);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  std::vector<cplx> c = fft::analyze(grid, a);
  const double mean = c[0].real();
  c[0] = cplx{};
  grid.for_each_mode([&](std::size_t i, const Wavevector& k) {
    if (!grid.in_dealias_set(k) || grid.on_nyquist(k)) c[i] = cplx{};
  });
  return {ScalarField::from_coefficients(grid, std::move(c)), mean};
}

double inner_product(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid(), g.grid(), "inner_product");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) sum += (f[i] * std::conj(g[i])).real();
  return Grid::volume() * sum;
}

double inner_product(const VectorField& u, const VectorField& v) {
  return inner_product(u[0], v[0]) + inner_product(u[1], v[1]) + inner_product(u[2], v[2]);
}

double l2_norm_squared(const ScalarField& f) {
  double sum = 0.0;
  for (const cplx& c : f.coeffs()) sum += std::norm(c);
  return Grid::volume() * sum;
}

double l2_norm_squared(const VectorField& v) {
  return l2_norm_squared(v[0]) + l2_norm_squared(v[1]) + l2_norm_squared(v[2]);
}

double physical_triple_sum(std::span<const double> f, std::span<const double> g, std::span<const double> h) {
  if (f.size() != g.size() || f.size() != h.size()) throw GridMismatch("physical_triple_sum: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * g[i] * h[i];
  return Grid::volume() * sum / static_cast<double>(f.size());
}

Grid oversampled_for_triples(const Grid& g) {
  auto up = [](int n) { return 3 * n / 2 + (3 * n / 2) % 2; };
  return Grid(up(g.n1()), up(g.n2()), up(g.n3()));
}

double trilinear_integral(const ScalarField& f, const ScalarField& g, const ScalarField& h) {
  require_same_grid(f.grid(), g.grid(), "trilinear_integral");
  require_same_grid(f.grid(), h.grid(), "trilinear_integral");
  if (f.is_zero() || g.is_zero() || h.is_zero()) return 0.0;
  if (f.in_dealias_set() && g.in_dealias_set() && h.in_dealias_set()) {
    return physical_triple_sum(to_physical(f), to_physical(g), to_physical(h));
  }
  const Grid fine = oversampled_for_triples(f.grid());
  return physical_triple_sum(to_physical(f, fine), to_physical(g, fine), to_physical(h, fine));
}

}  // namespace aniso::spectral
