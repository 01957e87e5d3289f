#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "aniso/spectral/grid.hpp"

namespace aniso::spectral {

using cplx = std::complex<double>;

/// Fourier coefficients of a real, mean-zero function on the periodic box:
///   f(x) = sum_k c(k) exp(i k.x).
///
/// The coefficient array is full (every storage index), Hermitian
/// (c(-k) = conj c(k)), and vanishes at k = 0 and on Nyquist planes.
/// Instances are immutable; every operation returns a new field.
class ScalarField {
 public:
  explicit ScalarField(Grid grid);

  /// Builds a field from raw coefficients. The mean and Nyquist entries are
  /// dropped and the array is symmetrized to exact Hermitian form; input
  /// whose anti-Hermitian part exceeds 1e-9 of its amplitude is rejected.
  static ScalarField from_coefficients(Grid grid, std::vector<cplx> coeffs);

  /// Builds a field whose coefficients are already exactly Hermitian with
  /// zero mean and zero Nyquist entries. Used by operations that preserve
  /// those properties by construction.
  static ScalarField from_trusted(Grid grid, std::vector<cplx> coeffs);

  const Grid& grid() const { return grid_; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  cplx operator[](std::size_t linear) const { return coeffs_[linear]; }
  cplx coeff(const Wavevector& k) const;

  double max_amplitude() const;
  bool is_zero() const;
  /// True when every nonzero coefficient lies in the 2/3-rule retained set.
  bool in_dealias_set() const;

  /// Applies a real multiplier m(k) that is even in k.
  template <typename Multiplier>
  ScalarField filtered(Multiplier&& m) const {
    std::vector<cplx> out(coeffs_.size());
    grid_.for_each_mode([&](std::size_t i, const Wavevector& k) {
      if (coeffs_[i] != cplx{}) out[i] = coeffs_[i] * static_cast<double>(m(k));
    });
    return from_trusted(grid_, std::move(out));
  }

  ScalarField operator+(const ScalarField& other) const;
  ScalarField operator-(const ScalarField& other) const;
  ScalarField operator*(double alpha) const;
  ScalarField operator-() const { return *this * -1.0; }

 private:
  ScalarField(Grid grid, std::vector<cplx> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {}

  Grid grid_;
  std::vector<cplx> coeffs_;
};

inline ScalarField operator*(double alpha, const ScalarField& f) { return f * alpha; }

/// Three scalar components on one grid plus a divergence-free certificate.
class VectorField {
 public:
  VectorField(ScalarField v1, ScalarField v2, ScalarField v3);
  static VectorField zeros(const Grid& grid);

  /// Attaches the divergence-free certificate; throws if
  /// max_k |k.v(k)| exceeds 1e-12 times the largest amplitude.
  static VectorField certified(ScalarField v1, ScalarField v2, ScalarField v3);

  const Grid& grid() const { return components_[0].grid(); }
  const ScalarField& operator[](int axis) const { return components_[static_cast<std::size_t>(axis)]; }
  const std::array<ScalarField, 3>& components() const { return components_; }
  bool divfree() const { return divfree_; }

  /// max_k |k.v(k)| relative to the largest coefficient amplitude.
  double divergence_defect() const;
  double max_amplitude() const;

  VectorField operator+(const VectorField& other) const;
  VectorField operator*(double alpha) const;

 private:
  std::array<ScalarField, 3> components_;
  bool divfree_ = false;
};

constexpr double kDivfreeTolerance = 1e-12;

}  // namespace aniso::spectral
