#pragma once

// Independent reference computations used as test oracles. Everything here
// works from raw coefficient lists by direct summation, never through FFTs.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <tuple>
#include <vector>

#include "aniso/spectral/field.hpp"

namespace oracle {

using aniso::spectral::cplx;
using aniso::spectral::Grid;
using aniso::spectral::ScalarField;
using aniso::spectral::Wavevector;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kVolume = 8.0 * kPi * kPi * kPi;

struct Mode {
  Wavevector k;
  cplx c;
};

inline std::vector<Mode> modes(const ScalarField& f) {
  std::vector<Mode> out;
  const Grid& g = f.grid();
  for (std::size_t n = 0; n < g.size(); ++n)
    if (f[n] != cplx{}) out.push_back({g.wavevector(n), f[n]});
  return out;
}

/// Field with c(k) = z and c(-k) = conj z for each listed (k, z).
inline ScalarField field(const Grid& g, const std::vector<std::pair<Wavevector, cplx>>& list) {
  std::vector<cplx> c(g.size());
  for (const auto& [k, z] : list) {
    c[g.index(g.storage_index(0, k.k1), g.storage_index(1, k.k2), g.storage_index(2, k.k3))] += z;
    c[g.index(g.storage_index(0, -k.k1), g.storage_index(1, -k.k2), g.storage_index(2, -k.k3))] += std::conj(z);
  }
  return ScalarField::from_coefficients(g, std::move(c));
}

/// f(x) by direct summation.
inline double evaluate(const std::vector<Mode>& m, double x1, double x2, double x3) {
  cplx s{};
  for (const auto& [k, c] : m) s += c * std::exp(cplx(0.0, k.k1 * x1 + k.k2 * x2 + k.k3 * x3));
  return s.real();
}

using Key = std::tuple<int, int, int>;

/// Coefficients of the exact product f g by direct convolution.
inline std::map<Key, cplx> convolve(const ScalarField& f, const ScalarField& g) {
  std::map<Key, cplx> out;
  for (const auto& a : modes(f))
    for (const auto& b : modes(g)) out[{a.k.k1 + b.k.k1, a.k.k2 + b.k.k2, a.k.k3 + b.k.k3}] += a.c * b.c;
  return out;
}

/// int f g h over the box by direct convolution: V sum_{k+k'+k''=0} f g h.
inline double triple(const ScalarField& f, const ScalarField& g, const ScalarField& h) {
  const auto fg = convolve(f, g);
  cplx s{};
  for (const auto& c : modes(h)) {
    auto it = fg.find({-c.k.k1, -c.k.k2, -c.k.k3});
    if (it != fg.end()) s += it->second * c.c;
  }
  return kVolume * s.real();
}

/// (2 pi)^3 sum |k|^{2s} |c|^2 by direct summation.
inline double sobolev_sq(const ScalarField& f, double s) {
  double sum = 0.0;
  for (const auto& [k, c] : modes(f)) sum += std::pow(k.norm2(), s) * std::norm(c);
  return kVolume * sum;
}

}  // namespace oracle
