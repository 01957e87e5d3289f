#pragma once

#include <complex>
#include <span>
#include <vector>

#include "aniso/spectral/grid.hpp"

namespace aniso::spectral::fft {

/// Synthesizes physical samples f(x) = sum_k c(k) exp(i k.x) on `target`
/// from the full coefficient array of a field living on `source`. When the
/// target grid is larger, the coefficients are zero-padded (exact
/// oversampling); it must not be smaller.
std::vector<double> synthesize(const Grid& source, std::span<const std::complex<double>> coeffs,
                               const Grid& target);

inline std::vector<double> synthesize(const Grid& grid, std::span<const std::complex<double>> coeffs) {
  return synthesize(grid, coeffs, grid);
}

/// Analyzes real samples into the full normalized coefficient array
/// c(k) = N^{-1} sum_x f(x) exp(-i k.x), including mean and Nyquist entries.
std::vector<std::complex<double>> analyze(const Grid& grid, std::span<const double> samples);

/// Horizontal coefficients per vertical slice:
///   out[index(i1, i2, j)] = sum_{k3} c(k1, k2, k3) exp(i k3 x3_j).
std::vector<std::complex<double>> vertical_synthesis(const Grid& grid,
                                                     std::span<const std::complex<double>> coeffs);

}  // namespace aniso::spectral::fft
