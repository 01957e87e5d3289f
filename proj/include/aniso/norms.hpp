#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aniso/spectral/field.hpp"

namespace aniso::norms {

using spectral::Grid;
using spectral::ScalarField;
using spectral::VectorField;

// All norms use the Parseval-exact normalization of the 2*pi box:
// ||a||^2_{H^s} = (2 pi)^3 sum_{k != 0} |k|^{2s} |c(k)|^2, and per slice
// ||a(., x3)||^2_{H^s_h} = (2 pi)^2 sum_{xi_h != 0} |xi_h|^{2s} |c_h(xi_h, x3)|^2.

double hs_norm_3d(const ScalarField& a, double s);
double hs_norm_3d(const VectorField& v, double s);

/// Horizontal homogeneous Sobolev norm of every x3 slice (x3_j = 2 pi j / n3).
std::vector<double> hs_slice_norms(const ScalarField& a, double s);
double hs_slice_norm(const ScalarField& a, double s, int slice);
/// L^infty_v(H^s_h): the largest slice norm.
double hs_slice_sup(const ScalarField& a, double s);

enum class VerticalNorm { l2, linf };

/// Horizontal Besov norm ||(2^{ks} ||Delta_k^h a(., x3)||_{L^p_h})||_{l^q}
/// per slice, composed with L^2_v or L^infty_v. p in {2, inf}, q in
/// {1, 2, inf}; std::numeric_limits<double>::infinity() encodes inf.
double besov_h_norm(const ScalarField& a, double s, double p, double q, VerticalNorm vertical);
/// The per-slice values before vertical composition.
std::vector<double> besov_h_slice_norms(const ScalarField& a, double s, double p, double q);

/// (int |xi| log(|xi_sigma| E + e) |a(xi)|^2)^{1/2}, xi_sigma = xi - (xi.sigma) sigma.
/// E = 0 is accepted (the weight reduces to |xi|).
double log_weighted_norm(const ScalarField& a, double E, const std::array<double, 3>& sigma = {0.0, 0.0, 1.0});

enum class MixedOrder {
  vertical_outer,    ///< L^p_v(L^q_h): horizontal norm innermost
  horizontal_outer,  ///< L^q_h(L^p_v): vertical norm innermost
};

/// Anisotropic Lebesgue norm by physical quadrature on the field grid.
/// vertical p in {2, inf}, horizontal q in {2, 4, inf}.
double mixed_norm(const ScalarField& a, double vertical_p, double horizontal_q,
                  MixedOrder order = MixedOrder::vertical_outer);

struct HeatSup {
  double value = 0.0;             ///< sup_t t^{1/2-gamma} ||e^{t Delta} u||_{L^inf}
  double t_at_max = 0.0;
  double resolution_error = 0.0;  ///< relative gap to the neighbouring t samples
};

struct HeatIntegral {
  double value = 0.0;       ///< int_0^inf ||e^{t Delta} u||^2_{L^inf} dt (quadrature part)
  double tail_bound = 0.0;  ///< rigorous bound on the part beyond the t-window
};

/// Log-spaced heat-time window: 200 points from 0.01/|k_max|^2 to
/// 10/|k_min|^2 with the grid's frequency range.
std::vector<double> heat_time_grid(const Grid& grid, int points = 200);

HeatSup heat_besov_sup(const ScalarField& u, double gamma);
HeatSup heat_besov_sup(const VectorField& v, double gamma);
HeatIntegral heat_besov_l2(const ScalarField& u);
HeatIntegral heat_besov_l2(const VectorField& v);

enum class NormKind { sobolev3d, sobolev_slice, besov_h, log_sobolev, mixed, heat_sup, heat_l2 };

/// Tagged description of a norm evaluation.
struct NormSpec {
  NormKind kind = NormKind::sobolev3d;
  double s = 0.5;
  double p = 2.0;
  double q = 2.0;
  double E = 1.0;
  std::array<double, 3> sigma{0.0, 0.0, 1.0};
  double gamma = 0.25;
  VerticalNorm vertical = VerticalNorm::l2;  ///< besov_h composition
  MixedOrder order = MixedOrder::vertical_outer;
  std::optional<int> slice;      ///< sobolev_slice: one slice instead of the sup
  std::optional<int> component;  ///< select one component of a vector container

  /// Throws std::invalid_argument on a kind-specific violation.
  void validate() const;
};

NormSpec norm_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const NormSpec& spec);
std::string to_string(NormKind kind);

struct NormValue {
  double value = 0.0;
  double error_estimate = 0.0;  ///< heat tail bound / t-resolution error, else 0
};

/// Evaluates a spec on one scalar field.
NormValue evaluate(const NormSpec& spec, const ScalarField& a);
/// Evaluates a spec on a multi-component field; Hilbert-type and heat norms
/// combine components (l^2 / pointwise Euclidean), the others require
/// spec.component.
NormValue evaluate(const NormSpec& spec, const std::vector<ScalarField>& components);

}  // namespace aniso::norms
