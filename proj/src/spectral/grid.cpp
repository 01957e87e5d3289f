#include "aniso/spectral/grid.hpp"

#include <cmath>
#include <cstdlib>

namespace aniso::spectral {

Grid::Grid(int n1, int n2, int n3) : dims_{n1, n2, n3} {
  for (int d : dims_) {
    if (d < 8 || d % 2 != 0) {
      throw std::invalid_argument("grid dimensions must be even and >= 8, got " + describe());
    }
  }
}

Wavevector Grid::wavevector(std::size_t linear) const {
  const int i1 = static_cast<int>(linear % dims_[0]);
  const std::size_t rest = linear / dims_[0];
  const int i2 = static_cast<int>(rest % dims_[1]);
  const int i3 = static_cast<int>(rest / dims_[1]);
  return {wavenumber(0, i1), wavenumber(1, i2), wavenumber(2, i3)};
}

bool Grid::on_nyquist(std::size_t linear) const {
  const int i1 = static_cast<int>(linear % dims_[0]);
  const std::size_t rest = linear / dims_[0];
  const int i2 = static_cast<int>(rest % dims_[1]);
  const int i3 = static_cast<int>(rest / dims_[1]);
  return is_nyquist(0, i1) || is_nyquist(1, i2) || is_nyquist(2, i3);
}

double Grid::max_horizontal_wavenumber() const {
  const double a = n1() / 2 - 1;
  const double b = n2() / 2 - 1;
  return std::sqrt(a * a + b * b);
}

double Grid::max_wavenumber() const {
  const double a = n1() / 2 - 1;
  const double b = n2() / 2 - 1;
  const double c = n3() / 2 - 1;
  return std::sqrt(a * a + b * b + c * c);
}

std::string Grid::describe() const {
  return std::to_string(dims_[0]) + "x" + std::to_string(dims_[1]) + "x" + std::to_string(dims_[2]);
}

void require_same_grid(const Grid& a, const Grid& b, const char* context) {
  if (!(a == b)) {
    throw GridMismatch(std::string(context) + ": grid mismatch " + a.describe() + " vs " + b.describe());
  }
}

}  // namespace aniso::spectral
