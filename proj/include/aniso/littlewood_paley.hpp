#pragma once

#include <ostream>
#include <utility>

#include "aniso/spectral/field.hpp"
#include "aniso/spectral/ops.hpp"

namespace aniso::lp {

using spectral::Grid;
using spectral::ScalarField;

/// Horizontal dyadic partition of unity.
///
/// chi ramps smoothly (C-infinity) from 1 at |tau| = 3/4 to 0 at
/// |tau| = 4/3 and phi(tau) = chi(tau/2) - chi(tau). Hence
/// supp phi lies in [3/4, 8/3], sum_j phi(2^-j tau) = 1 for tau > 0 and
/// chi(tau) + sum_{j>=0} phi(2^-j tau) = 1, both by telescoping.
class DyadicPartition {
 public:
  static constexpr double chi_flat = 3.0 / 4.0;   ///< chi = 1 below
  static constexpr double chi_outer = 4.0 / 3.0;  ///< chi = 0 above
  static constexpr double phi_inner = 3.0 / 4.0;
  static constexpr double phi_outer = 8.0 / 3.0;

  double chi(double tau) const;
  double phi(double tau) const;

  /// Writes tau, chi(tau), phi(tau) samples on [0, tau_max] as CSV.
  void write_csv(std::ostream& out, int samples, double tau_max) const;
};

const DyadicPartition& partition();

/// Delta_k^h a: multiply each coefficient by phi(2^-k |xi_h|).
ScalarField delta_h(const ScalarField& a, int k);

/// S_k^h a: multiply each coefficient by chi(2^-k |xi_h|).
ScalarField s_h(const ScalarField& a, int k);

/// The part of a with xi_h = 0 (x_h-independent modes).
ScalarField horizontal_mean_part(const ScalarField& a);

/// Smallest and largest k with Delta_k^h nonzero on some nonzero lattice
/// |xi_h| of the grid. Summing Delta_k^h over this range reconstructs a
/// minus its horizontal-mean part.
std::pair<int, int> dyadic_range(const Grid& grid);

/// Sharp three-band split on |xi_h|: flat |xi_h| < lambda,
/// natural lambda <= |xi_h| < Lambda, sharp |xi_h| >= Lambda.
struct BandTriple {
  ScalarField flat;
  ScalarField natural;
  ScalarField sharp;
  double lambda;
  double Lambda;
};

/// Throws std::invalid_argument when lambda > Lambda or lambda < 0.
BandTriple band_split(const ScalarField& a, double lambda, double Lambda);

/// Horizontal Bony decomposition
///   ab = T_a b + T~_b a + a_0 b_0,
///   T_a b = sum_k S_{k-1}^h a Delta_k^h b,  T~_b a = sum_k S_{k+2}^h b Delta_k^h a,
/// with a_0, b_0 the horizontal-mean parts (absent on R^2, present on the
/// lattice). All pieces are 2/3-rule dealiased products; the sum over k
/// runs over dyadic_range of the grid.
struct BonySplit {
  spectral::Product low_high;   ///< T_a^h b
  spectral::Product high_low;   ///< T~_b^h a
  spectral::Product mean_mean;  ///< a_0 b_0
  spectral::Product product;    ///< dealiased ab, computed directly
  /// ||ab - T - T~ - a_0 b_0||_{L^2} / ||ab||_{L^2}: the part of the
  /// product not captured by the resolved bands (rounding level when the
  /// bands cover the grid).
  double unresolved_tail = 0.0;
};

BonySplit bony_split(const ScalarField& a, const ScalarField& b);

}  // namespace aniso::lp
