#include "aniso/spectral/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aniso::spectral {

namespace {


}  // namespace

ScalarField::ScalarField(Grid grid) : grid_(grid), coeffs_(grid.size()) {}

ScalarField ScalarField::from_coefficients(Grid grid, std::vector<cplx> coeffs) {
  if (coeffs.size() != grid.size()) {
    throw std::invalid_argument("coefficient count does not match grid " + grid.describe());
  }
  double amplitude = 0.0;
  for (const cplx& c : coeffs) amplitude = std::max(amplitude, std::norm(c));
  amplitude = std::sqrt(amplitude);

  std::vector<cplx> sym(coeffs.size());
  double defect = 0.0;
  const int n1 = grid.n1(), n2 = grid.n2(), n3 = grid.n3();
  for (int i3 = 0; i3 < n3; ++i3) {
    if (grid.is_nyquist(2, i3)) continue;
    const int m3 = (n3 - i3) % n3;
    for (int i2 = 0; i2 < n2; ++i2) {
      if (grid.is_nyquist(1, i2)) continue;
      const int m2 = (n2 - i2) % n2;
      for (int i1 = 0; i1 < n1; ++i1) {
        if (grid.is_nyquist(0, i1)) continue;
        const std::size_t i = grid.index(i1, i2, i3);
        const cplx mirrored = std::conj(coeffs[grid.index((n1 - i1) % n1, m2, m3)]);
        defect = std::max(defect, std::norm(coeffs[i] - mirrored));
        sym[i] = 0.5 * (coeffs[i] + mirrored);
      }
    }
  }
  if (std::sqrt(defect) > 1e-9 * amplitude) {
    throw std::invalid_argument("coefficients are not Hermitian (field would not be real)");
  }
  sym[0] = cplx{};
  return ScalarField(grid, std::move(sym));
}

ScalarField ScalarField::from_trusted(Grid grid, std::vector<cplx> coeffs) {
  return ScalarField(grid, std::move(coeffs));
}

cplx ScalarField::coeff(const Wavevector& k) const {
  for (int axis = 0; axis < 3; ++axis) {
    if (2 * std::abs(k[axis]) >= grid_.n(axis)) return {};
  }
  return coeffs_[grid_.index(grid_.storage_index(0, k.k1), grid_.storage_index(1, k.k2),
                             grid_.storage_index(2, k.k3))];
}

double ScalarField::max_amplitude() const {
  double m = 0.0;
  for (const cplx& c : coeffs_) m = std::max(m, std::norm(c));
  m = std::sqrt(m);
  return m;
}

bool ScalarField::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const cplx& c) { return c == cplx{}; });
}

bool ScalarField::in_dealias_set() const {
  bool inside = true;
  grid_.for_each_mode([&](std::size_t i, const Wavevector& k) {
    if (inside && coeffs_[i] != cplx{} && !grid_.in_dealias_set(k)) inside = false;
  });
  return inside;
}

ScalarField ScalarField::operator+(const ScalarField& other) const {
  require_same_grid(grid_, other.grid_, "field addition");
  std::vector<cplx> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeffs_[i] + other.coeffs_[i];
  return ScalarField(grid_, std::move(out));
}

ScalarField ScalarField::operator-(const ScalarField& other) const {
  require_same_grid(grid_, other.grid_, "field subtraction");
  std::vector<cplx> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeffs_[i] - other.coeffs_[i];
  return ScalarField(grid_, std::move(out));
}

ScalarField ScalarField::operator*(double alpha) const {
  std::vector<cplx> out(coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = alpha * coeffs_[i];
  return ScalarField(grid_, std::move(out));
}

VectorField::VectorField(ScalarField v1, ScalarField v2, ScalarField v3)
    : components_{std::move(v1), std::move(v2), std::move(v3)} {
  require_same_grid(components_[0].grid(), components_[1].grid(), "vector field");
  require_same_grid(components_[0].grid(), components_[2].grid(), "vector field");
}

VectorField VectorField::zeros(const Grid& grid) {
  VectorField v{ScalarField(grid), ScalarField(grid), ScalarField(grid)};
  v.divfree_ = true;
  return v;
}

VectorField VectorField::certified(ScalarField v1, ScalarField v2, ScalarField v3) {
  VectorField v(std::move(v1), std::move(v2), std::move(v3));
  const double defect = v.divergence_defect();
  if (defect > kDivfreeTolerance) {
    throw std::invalid_argument("divergence-free certificate rejected: relative defect " +
                                std::to_string(defect));
  }
  v.divfree_ = true;
  return v;
}

double VectorField::divergence_defect() const {
  const Grid& g = grid();
  const double amplitude = max_amplitude();
  if (amplitude == 0.0) return 0.0;
  double worst = 0.0;
  g.for_each_mode([&](std::size_t i, const Wavevector& k) {
    const cplx div = double(k.k1) * components_[0][i] + double(k.k2) * components_[1][i] +
                     double(k.k3) * components_[2][i];
    worst = std::max(worst, std::norm(div));
  });
  return std::sqrt(worst) / amplitude;
}

double VectorField::max_amplitude() const {
  return std::max({components_[0].max_amplitude(), components_[1].max_amplitude(),
                   components_[2].max_amplitude()});
}

VectorField VectorField::operator+(const VectorField& other) const {
  VectorField out(components_[0] + other.components_[0], components_[1] + other.components_[1],
                  components_[2] + other.components_[2]);
  out.divfree_ = divfree_ && other.divfree_;
  return out;
}

VectorField VectorField::operator*(double alpha) const {
  VectorField out(components_[0] * alpha, components_[1] * alpha, components_[2] * alpha);
  out.divfree_ = divfree_;
  return out;
}

}  // namespace aniso::spectral
