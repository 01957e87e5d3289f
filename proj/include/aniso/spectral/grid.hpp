#pragma once

#include <array>
#include <cstddef>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aniso::spectral {

/// Thrown when two fields that must share a grid do not.
class GridMismatch : public std::invalid_argument {
 public:
  explicit GridMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Integer wavevector k = (k1, k2, k3); xi_h = (k1, k2), xi_3 = k3.
struct Wavevector {
  int k1 = 0;
  int k2 = 0;
  int k3 = 0;

  int operator[](int axis) const { return axis == 0 ? k1 : (axis == 1 ? k2 : k3); }
  double norm2() const { return double(k1) * k1 + double(k2) * k2 + double(k3) * k3; }
  double horizontal_norm2() const { return double(k1) * k1 + double(k2) * k2; }
  bool is_zero() const { return k1 == 0 && k2 == 0 && k3 == 0; }
};

/// Uniform grid on the 2*pi-periodic box with n1 x n2 x n3 modes.
///
/// Storage order for both spectral coefficients and physical samples is
/// k3-major: linear = (i3 * n2 + i2) * n1 + i1. Index i maps to the
/// wavenumber i for i < n/2 and i - n for i > n/2; the Nyquist index n/2
/// carries no admissible mode and is kept at zero in every field.
class Grid {
 public:
  Grid(int n1, int n2, int n3);
  static Grid cube(int n) { return Grid(n, n, n); }

  int n(int axis) const { return dims_[static_cast<std::size_t>(axis)]; }
  int n1() const { return dims_[0]; }
  int n2() const { return dims_[1]; }
  int n3() const { return dims_[2]; }
  std::size_t size() const { return std::size_t(dims_[0]) * dims_[1] * dims_[2]; }
  std::size_t slice_size() const { return std::size_t(dims_[0]) * dims_[1]; }

  std::size_t index(int i1, int i2, int i3) const {
    return (std::size_t(i3) * dims_[1] + std::size_t(i2)) * dims_[0] + std::size_t(i1);
  }

  /// Signed wavenumber of storage index i along an axis.
  int wavenumber(int axis, int i) const {
    const int n = dims_[static_cast<std::size_t>(axis)];
    return i <= n / 2 ? i : i - n;
  }
  /// Storage index of wavenumber k along an axis (|k| < n/2).
  int storage_index(int axis, int k) const {
    const int n = dims_[static_cast<std::size_t>(axis)];
    return k >= 0 ? k : k + n;
  }
  bool is_nyquist(int axis, int i) const { return i == dims_[static_cast<std::size_t>(axis)] / 2; }

  Wavevector wavevector(std::size_t linear) const;

  /// Calls f(linear, wavevector) for every storage index in order.
  template <typename F>
  void for_each_mode(F&& f) const {
    std::size_t linear = 0;
    for (int i3 = 0; i3 < dims_[2]; ++i3) {
      const int k3 = wavenumber(2, i3);
      for (int i2 = 0; i2 < dims_[1]; ++i2) {
        const int k2 = wavenumber(1, i2);
        for (int i1 = 0; i1 < dims_[0]; ++i1, ++linear) f(linear, Wavevector{wavenumber(0, i1), k2, k3});
      }
    }
  }
  /// True when any component of the storage triple sits on a Nyquist plane.
  bool on_nyquist(std::size_t linear) const;
  bool on_nyquist(const Wavevector& k) const {
    return 2 * k.k1 == dims_[0] || 2 * k.k2 == dims_[1] || 2 * k.k3 == dims_[2];
  }

  /// Largest retained |k_axis| under the 2/3 rule: quadratic products of
  /// retained modes never alias back onto retained modes.
  int dealias_cutoff(int axis) const { return (n(axis) - 1) / 3; }
  bool in_dealias_set(const Wavevector& k) const {
    return std::abs(k.k1) <= dealias_cutoff(0) && std::abs(k.k2) <= dealias_cutoff(1) &&
           std::abs(k.k3) <= dealias_cutoff(2);
  }

  /// Largest |xi_h| representable without Nyquist modes.
  double max_horizontal_wavenumber() const;
  /// Largest |k| representable without Nyquist modes.
  double max_wavenumber() const;

  static constexpr double period = 2.0 * std::numbers::pi;
  static constexpr double volume() { return period * period * period; }
  static constexpr double area() { return period * period; }

  bool operator==(const Grid& other) const = default;
  std::string describe() const;

 private:
  std::array<int, 3> dims_;
};

void require_same_grid(const Grid& a, const Grid& b, const char* context);

}  // namespace aniso::spectral
