#pragma once

#include <array>
#include <ostream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "aniso/spectral/field.hpp"

namespace aniso::diagnostics {

using spectral::Grid;
using spectral::ScalarField;
using spectral::VectorField;

struct Options {
  std::vector<double> log_E{0.0, 1.0, 100.0};  ///< E values of the log-weighted monitor
  std::vector<double> crit_p{2.0, 4.0};         ///< exponents of the one-component criterion
};

/// One sample of a trajectory. Keyed lists keep the order of Options.
struct Record {
  double t = 0.0;
  double energy = 0.0;  ///< 1/2 ||v||^2
  double diss = 0.0;    ///< ||grad v||^2
  double gh_l2 = 0.0;   ///< ||grad_h v||^2
  double gh_h1 = 0.0;   ///< ||grad_h v||^2_{H^1}
  std::array<double, 4> e{};
  double v3_h12 = 0.0;
  double v3_h32 = 0.0;
  std::vector<std::pair<double, double>> v3_log;          ///< (E, ||v3||_{H^{1/2}_{log,E}})
  std::vector<std::pair<double, double>> crit_integrand;  ///< (p, ||v3||^p_{H^{1/2+2/p}})
  std::vector<std::pair<double, double>> crit_p;          ///< (p, accumulated integral)
  double cum_diss = 0.0;  ///< int_0^t ||grad v||^2, from the solver
  double div_defect = 0.0;

  nlohmann::json to_json() const;
  static Record from_json(const nlohmann::json& j);
};

/// Computes a record for v at time t. When `previous` is given, criterion
/// integrals continue from it by the trapezoid rule.
Record make_record(const VectorField& v, double t, double cum_diss, const Options& options,
                   const Record* previous = nullptr);

/// 1/2 ||v(t)||^2 + int_0^t ||grad v||^2 - 1/2 ||v_0||^2.
double energy_balance(const Record& first, const Record& current);

struct BalanceTerms {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  double e4 = 0.0;
  double sum() const { return e1 + e2 + e3 + e4; }
};

/// E_1..E_4 of the horizontal gradient balance
///   1/2 d/dt ||grad_h v||^2 + ||grad_h v||^2_{H^1} = E_1 + E_2 + E_3 + E_4,
/// with (i, j, m) summed over {1,2}:
///   E_1 = -int d_i v^j d_j v^m d_i v^m,  E_2 = -int d_i v^j d_j v^3 d_i v^3,
///   E_3 = -int d_i v^3 d_3 v^m d_i v^m,  E_4 = -int d_i v^3 d_3 v^3 d_i v^3.
BalanceTerms grad_h_balance_terms(const VectorField& v);

/// Finite-difference residual of the balance between two records:
/// (gh_l2(b) - gh_l2(a)) / (2 dt) + mean of gh_h1 - mean of sum E.
double grad_h_balance_residual(const Record& a, const Record& b);

struct E1Identity {
  double direct = 0.0;
  double rewritten = 0.0;
  double residual = 0.0;  ///< |direct - rewritten| / max(|direct|, scale)
};

/// Compares E_1 against
///   int d_3 v^3 (sum_{i,j} (d_i v^j)^2 + d_1 v^2 d_2 v^1 - d_1 v^1 d_2 v^2).
E1Identity e1_identity_residual(const VectorField& v);

struct DivfreeIdentity {
  double d3w3_sq = 0.0;      ///< ||d_3 w^3||^2
  double divh_wh_sq = 0.0;   ///< ||div_h w^h||^2
  double residual = 0.0;     ///< relative difference of the two
  double grad_w3_sq = 0.0;   ///< ||grad w^3||^2
  double grad_h_w_sq = 0.0;  ///< ||grad_h w||^2
  bool inequality_holds = true;  ///< ||grad w^3||^2 <= 2 ||grad_h w||^2
  bool input_divfree = true;
};

DivfreeIdentity divfree_identity(const VectorField& w);

/// Trapezoid accumulation of samples f(t_j); returns the running integral.
std::vector<double> trapezoid_running(const std::vector<double>& t, const std::vector<double>& f);

/// Running int_0^t ||v3||^p_{H^{1/2+2/p}} over records (p must be one of
/// the record's exponents).
std::vector<double> criterion_p_integral(const std::vector<Record>& records, double p);

struct Snapshot {
  double t = 0.0;
  VectorField v;
};

struct LowerBoundSample {
  double t = 0.0;
  double tau = 0.0;           ///< T* - t
  double grad_sq = 0.0;       ///< ||grad v||^2
  double h_norm = 0.0;        ///< ||v||_{H^{1/2+2 gamma}}
  double besov_heat = 0.0;    ///< sup_s s^{1/2-gamma} ||e^{s Delta} v||_{L^inf}
  double c_grad = 0.0;        ///< tau ||grad v||^4
  double c_sobolev = 0.0;     ///< tau^gamma ||v||_{H^{1/2+2 gamma}}
  double c_besov = 0.0;       ///< tau^gamma besov_heat
};

/// Implied constants of the lower bounds at a presumed blow-up time.
/// Throws std::invalid_argument if some snapshot has t >= T*.
std::vector<LowerBoundSample> leray_lower_bounds(const std::vector<Snapshot>& snapshots, double t_star,
                                                 double gamma, bool with_besov = true);

struct Theorem13Sample {
  double t = 0.0;
  double future_sup = 0.0;  ///< M(t) = max over records t' >= t of ||v3(t')||_{H^{1/2}}
  double log_factor = 0.0;  ///< log^{1/2}(e + ||v(t)||^4 / (T* - t))
  double implied_c0 = 0.0;  ///< future_sup * log_factor
};

std::vector<Theorem13Sample> theorem13_bound(const std::vector<Record>& records, double t_star);

struct LogNormSeries {
  std::vector<double> E;
  std::vector<double> t;
  std::vector<std::vector<double>> values;       ///< values[e][record]
  std::vector<std::vector<double>> running_max;  ///< same shape
};

LogNormSeries log_norm_monitor(const std::vector<Snapshot>& snapshots, const std::vector<double>& E);
LogNormSeries log_norm_monitor(const std::vector<Record>& records);

/// CSV pivot of records, one row per record.
void write_csv(const std::vector<Record>& records, std::ostream& out);

}  // namespace aniso::diagnostics
