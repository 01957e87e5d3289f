#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "aniso/spectral/field.hpp"

namespace aniso::lab {

using spectral::Grid;
using spectral::ScalarField;
using spectral::VectorField;

struct CheckReport {
  std::string name;
  double lhs = 0.0;
  std::vector<std::pair<std::string, double>> rhs_terms;
  double ratio = 0.0;                     ///< lhs over the structural RHS (constants stripped)
  std::optional<double> implied_constant; ///< for constant-bearing inequalities
  std::optional<bool> pass;               ///< exact identities and hard bounds only

  double term(const std::string& key) const;
  nlohmann::json to_json() const;
};

/// int d_i v^3 d_3 v^l d_i v^l for i, l in {1, 2}.
double J_il(const VectorField& v, int i, int l);

struct JBands {
  double flat = 0.0;
  double natural = 0.0;
  double sharp = 0.0;
  double total = 0.0;     ///< J_il
  double residual = 0.0;  ///< |flat + natural + sharp - total| / scale
};

/// Splits d_3 v^l into |xi_h| < lambda, lambda <= |xi_h| < Lambda and
/// |xi_h| >= Lambda and integrates each band against d_i v^3 d_i v^l.
JBands j_band_components(const VectorField& v, int i, int l, double lambda, double Lambda);

struct JSharpBony {
  double piece1 = 0.0;      ///< int d_i v^3 T~_{d_i v^l}(d_3 v^l_sharp)
  double piece2 = 0.0;      ///< int d_i v^3 T_{d_3 v^l_sharp}(d_i v^l)
  double mean_piece = 0.0;  ///< horizontal-mean product term (zero when the band excludes xi_h = 0)
  double direct = 0.0;      ///< sharp-band integral computed directly
  double residual = 0.0;    ///< |piece1 + piece2 + mean_piece - direct|
  double tail_bound = 0.0;  ///< Cauchy-Schwarz bound from the Bony unresolved tail
};

/// Paraproduct split of the sharp band |xi_h| >= 1/E.
JSharpBony j_sharp_bony(const VectorField& v, int i, int l, double E);

struct Cutoffs {
  double lambda = 0.0;
  double Lambda = 0.0;
  bool ordered = true;  ///< lambda <= Lambda
};

/// Lambda = (50 C)^2 ||grad_h v||^2 + e/E, lambda = 1/E.
Cutoffs choose_cutoffs(double grad_h_sq, double E, double C);
Cutoffs choose_cutoffs(const VectorField& v, double E, double C);

/// The quantities the lemma bounds are built from.
struct LemmaIngredients {
  double j_max = 0.0;      ///< max over (i, l) of |J_il|
  double gh_l2 = 0.0;      ///< ||grad_h v||^2
  double gh_h1 = 0.0;      ///< ||grad_h v||^2_{H^1}
  double ghh_h1 = 0.0;     ///< ||grad_h v^h||^2_{H^1}
  double grad_sq = 0.0;    ///< ||grad v||^2
  double d3_sq = 0.0;      ///< ||d_3 v||^2
  double d3h_sq = 0.0;     ///< ||d_3 v^h||^2
  double v3_h12 = 0.0;
  double v3_h32 = 0.0;
  std::vector<std::pair<double, double>> v3_logh;  ///< (E, ||v3||_{H^{1/2}_{log_h,E}})
};

LemmaIngredients lemma_ingredients(const VectorField& v, const std::vector<double>& E_list = {});

/// |J| <= 1/10 ||grad_h v||^2_{H^1}
///        + C (log(||grad_h v||^2 E + e) ||v3||^2_{H^{3/2}} + ||grad v||^2 / E) ||grad_h v||^2.
/// The two constants are merged into one implied C.
CheckReport check_lemma21(const VectorField& v, double E);
CheckReport check_lemma21(const LemmaIngredients& in, double E);

/// |J| <= (eps + C ||v3||_{H^{1/2}} log^{1/2}(e + E ||grad_h v||^2)) ||grad_h v||^2_{H^1}
///        + C ||v3||^2_{H^{1/2}} ||d_3 v||^2 / E^2.
CheckReport check_lemma22(const VectorField& v, double E, double epsilon);
CheckReport check_lemma22(const LemmaIngredients& in, double E, double epsilon);

/// |J| <= (1/10 + C ||v3||_{H^{1/2}_{log_h,E}}) ||grad_h v^h||^2_{H^1}
///        + C ||v3||^2_{H^{1/2}} ||d_3 v^h||^2 / E^2.
CheckReport check_lemma23(const VectorField& v, double E);
CheckReport check_lemma23(const LemmaIngredients& in, double E);

enum class Support { low, ring };

/// ||d^alpha_h a||_{L^p1_h} <= C 2^{k(|alpha| + 2(1/p2 - 1/p1))} ||a||_{L^p2_h}
/// slice by slice, worst slice reported. p = inf is
/// std::numeric_limits<double>::infinity(). Throws std::invalid_argument
/// when a is not supported in the declared ball (|xi_h| <= 4/3 2^k) or ring
/// (3/4 2^k <= |xi_h| <= 8/3 2^k).
CheckReport check_bernstein(const ScalarField& a, int k, Support support, double p1, double p2,
                            std::pair<int, int> alpha);

/// ||a||_{L^2_h} <= (4/3) 2^{-k} ||grad_h a||_{L^2_h} on the ring; a hard bound.
CheckReport check_ring_inverse(const ScalarField& a, int k);

/// ||a||_{L^inf_v(H^s_h)} <= sqrt 2 ||a||_{H^{s+1/2}}; a hard bound.
CheckReport check_trace(const ScalarField& a, double s);

enum class ProductVariant { bony_paraproducts, b21_law, full_law };

/// Two-dimensional product laws on x3-independent fields.
CheckReport check_product(const ScalarField& a, const ScalarField& b, ProductVariant variant);

/// Ratio invariance of the check_lemma21 constant under v <- alpha v,
/// E <- E / alpha^2.
CheckReport lemma21_amplitude_scaling(const VectorField& v, double E, double alpha);

/// Ratio invariance under the Navier-Stokes scaling v <- lambda v(lambda x)
/// (integer lambda, v band-limited so the scaled field stays resolved),
/// E <- E / lambda, with integrals normalized to one period cell.
CheckReport lemma21_ns_scaling(const VectorField& v, double E, int lambda);

/// v(x) -> lambda v(lambda x) on the lattice.
VectorField ns_rescale(const VectorField& v, int lambda);

struct SuiteOptions {
  int n = 32;
  int corpus_size = 200;
  std::uint64_t seed = 0;  ///< 0 selects the default corpus seed
  int threads = 1;
  std::vector<double> E_list{0.1, 1.0, 10.0};
  /// Largest corpus wavenumber; unset uses the grid's dealias cutoff.
  /// Fixing it makes the corpus the same set of functions on every grid.
  std::optional<double> shell_max;
};

struct SuiteResult {
  std::vector<CheckReport> reports;
  int hard_failures = 0;
};

const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown suite.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace aniso::lab
