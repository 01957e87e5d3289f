#pragma once

#include <span>
#include <vector>

#include "aniso/spectral/field.hpp"

namespace aniso::spectral {

/// Physical samples on the field's grid (inverse transform).
std::vector<double> to_physical(const ScalarField& f);

/// Samples a field on a finer grid by zero-padding its spectrum.
std::vector<double> to_physical(const ScalarField& f, const Grid& oversampled);

/// Forward transform of real samples. The mean of the samples is discarded
/// (returned through `mean` when non-null) and Nyquist content is dropped.
ScalarField to_spectral(const Grid& grid, std::span<const double> samples, double* mean = nullptr);

/// Spectral derivative along axis 1, 2 or 3 (coefficients times i k_axis).
ScalarField derivative(const ScalarField& f, int axis);

/// v(k) <- v(k) - k (k.v(k)) / |k|^2. The result carries the
/// divergence-free certificate.
VectorField leray_project(const VectorField& v);

/// Spectral divergence sum_j d_j v^j.
ScalarField divergence(const VectorField& v);

/// Drops every mode outside the 2/3-rule retained set.
ScalarField truncate_to_dealias_set(const ScalarField& f);

struct Product {
  ScalarField field;  ///< mean-free part, truncated to the retained set
  double mean = 0.0;  ///< spatial mean of f*g, stored separately
};

/// Pointwise physical product with 2/3-rule truncation of the result.
/// Exact whenever supp f + supp g lies in the retained set.
Product dealiased_product(const ScalarField& f, const ScalarField& g);

/// Discrete L^2 inner product (volume-normalized so that Parseval is exact).
double inner_product(const ScalarField& f, const ScalarField& g);
double inner_product(const VectorField& u, const VectorField& v);

/// ||f||^2_{L^2} = (2 pi)^3 sum_k |c(k)|^2.
double l2_norm_squared(const ScalarField& f);
double l2_norm_squared(const VectorField& v);

/// Exact integral of f g h over the box. Uses a native-grid quadrature when
/// all three factors lie in the retained set (triple products of retained
/// modes cannot alias onto k = 0) and a 3/2-oversampled quadrature
/// otherwise. Symmetric in its arguments.
double trilinear_integral(const ScalarField& f, const ScalarField& g, const ScalarField& h);

/// Quadrature (2 pi)^3 / N sum_x f g h of physical samples.
double physical_triple_sum(std::span<const double> f, std::span<const double> g, std::span<const double> h);

/// Grid size that makes triple-product quadrature alias-free for any field on `g`.
Grid oversampled_for_triples(const Grid& g);

}  // namespace aniso::spectral
