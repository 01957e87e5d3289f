#include "aniso/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "aniso/norms.hpp"
#include "aniso/spectral/ops.hpp"

namespace aniso::diagnostics {

using spectral::cplx;

namespace {

// Physical samples of d_i v^j (i, j = 0..2) on a grid where triple
// products integrate exactly.
struct GradientSamples {
  std::array<std::array<std::vector<double>, 3>, 3> d;

  explicit GradientSamples(const VectorField& v) {
    const Grid& g = v.grid();
    const bool native = v[0].in_dealias_set() && v[1].in_dealias_set() && v[2].in_dealias_set();
    const Grid target = native ? g : spectral::oversampled_for_triples(g);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        d[std::size_t(i)][std::size_t(j)] = spectral::to_physical(spectral::derivative(v[j], i + 1), target);
  }

  const std::vector<double>& operator()(int i, int j) const { return d[std::size_t(i)][std::size_t(j)]; }

  double triple(int i1, int j1, int i2, int j2, int i3, int j3) const {
    return spectral::physical_triple_sum((*this)(i1, j1), (*this)(i2, j2), (*this)(i3, j3));
  }
};

double weighted_energy(const VectorField& v, auto&& weight) {
  const Grid& g = v.grid();
  double sum = 0.0;
  g.for_each_mode([&](std::size_t n, const spectral::Wavevector& k) {
    double amp = 0.0;
    for (int c = 0; c < 3; ++c) amp += std::norm(v[c][n]);
    if (amp == 0.0) return;
    sum += weight(k) * amp;
  });
  return Grid::volume() * sum;
}

nlohmann::json keyed(const std::vector<std::pair<double, double>>& items) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : items) {
    std::ostringstream name;
    name << key;
    j[name.str()] = value;
  }
  return j;
}

std::vector<std::pair<double, double>> unkeyed(const nlohmann::json& j) {
  std::vector<std::pair<double, double>> out;
  for (const auto& [key, value] : j.items()) out.emplace_back(std::stod(key), value.get<double>());
  std::sort(out.begin(), out.end());
  return out;
}

double lookup(const std::vector<std::pair<double, double>>& items, double key) {
  for (const auto& [k, v] : items)
    if (k == key) return v;
  throw std::invalid_argument("record has no entry for " + std::to_string(key));
}

}  // namespace

nlohmann::json Record::to_json() const {
  return {{"t", t},
          {"energy", energy},
          {"diss", diss},
          {"gh_l2", gh_l2},
          {"gh_h1", gh_h1},
          {"e1", e[0]},
          {"e2", e[1]},
          {"e3", e[2]},
          {"e4", e[3]},
          {"v3_h12", v3_h12},
          {"v3_h32", v3_h32},
          {"v3_log", keyed(v3_log)},
          {"crit_integrand", keyed(crit_integrand)},
          {"crit_p", keyed(crit_p)},
          {"cum_diss", cum_diss},
          {"div_defect", div_defect}};
}

Record Record::from_json(const nlohmann::json& j) {
  Record r;
  r.t = j.at("t").get<double>();
  r.energy = j.at("energy").get<double>();
  r.diss = j.at("diss").get<double>();
  r.gh_l2 = j.at("gh_l2").get<double>();
  r.gh_h1 = j.at("gh_h1").get<double>();
  r.e = {j.at("e1").get<double>(), j.at("e2").get<double>(), j.at("e3").get<double>(), j.at("e4").get<double>()};
  r.v3_h12 = j.at("v3_h12").get<double>();
  r.v3_h32 = j.at("v3_h32").get<double>();
  r.v3_log = unkeyed(j.at("v3_log"));
  r.crit_integrand = unkeyed(j.at("crit_integrand"));
  r.crit_p = unkeyed(j.at("crit_p"));
  r.cum_diss = j.value("cum_diss", 0.0);
  r.div_defect = j.value("div_defect", 0.0);
  return r;
}

Record make_record(const VectorField& v, double t, double cum_diss, const Options& options, const Record* previous) {
  Record r;
  r.t = t;
  r.energy = 0.5 * spectral::l2_norm_squared(v);
  r.diss = weighted_energy(v, [](const auto& k) { return k.norm2(); });
  r.gh_l2 = weighted_energy(v, [](const auto& k) { return k.horizontal_norm2(); });
  r.gh_h1 = weighted_energy(v, [](const auto& k) { return k.horizontal_norm2() * k.norm2(); });
  const BalanceTerms b = grad_h_balance_terms(v);
  r.e = {b.e1, b.e2, b.e3, b.e4};
  r.v3_h12 = norms::hs_norm_3d(v[2], 0.5);
  r.v3_h32 = norms::hs_norm_3d(v[2], 1.5);
  for (double E : options.log_E) r.v3_log.emplace_back(E, norms::log_weighted_norm(v[2], E));
  for (double p : options.crit_p) {
    if (!(p >= 2.0)) throw std::invalid_argument("criterion exponent must be >= 2");
    const double value = std::pow(norms::hs_norm_3d(v[2], 0.5 + 2.0 / p), p);
    r.crit_integrand.emplace_back(p, value);
    double acc = 0.0;
    if (previous) acc = lookup(previous->crit_p, p) + 0.5 * (t - previous->t) * (value + lookup(previous->crit_integrand, p));
    r.crit_p.emplace_back(p, acc);
  }
  r.cum_diss = cum_diss;
  r.div_defect = v.divergence_defect();
  return r;
}

double energy_balance(const Record& first, const Record& current) {
  return current.energy + (current.cum_diss - first.cum_diss) - first.energy;
}

BalanceTerms grad_h_balance_terms(const VectorField& v) {
  BalanceTerms out;
  if (v[0].is_zero() && v[1].is_zero() && v[2].is_zero()) return out;
  const GradientSamples d(v);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int m = 0; m < 2; ++m) out.e1 -= d.triple(i, j, j, m, i, m);
      out.e2 -= d.triple(i, j, j, 2, i, 2);
    }
    for (int m = 0; m < 2; ++m) out.e3 -= d.triple(i, 2, 2, m, i, m);
    out.e4 -= d.triple(i, 2, 2, 2, i, 2);
  }
  return out;
}

double grad_h_balance_residual(const Record& a, const Record& b) {
  const double dt = b.t - a.t;
  if (!(dt > 0.0)) throw std::invalid_argument("grad_h_balance_residual needs increasing times");
  const double sum_a = a.e[0] + a.e[1] + a.e[2] + a.e[3];
  const double sum_b = b.e[0] + b.e[1] + b.e[2] + b.e[3];
  return (b.gh_l2 - a.gh_l2) / (2.0 * dt) + 0.5 * (a.gh_h1 + b.gh_h1) - 0.5 * (sum_a + sum_b);
}

E1Identity e1_identity_residual(const VectorField& v) {
  E1Identity out;
  if (v[0].is_zero() && v[1].is_zero() && v[2].is_zero()) return out;
  const GradientSamples d(v);
  out.direct = grad_h_balance_terms(v).e1;

  const auto& d33 = d(2, 2);
  std::vector<double> bracket(d33.size(), 0.0);
  for (std::size_t n = 0; n < bracket.size(); ++n) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) s += d(i, j)[n] * d(i, j)[n];
    bracket[n] = s + d(0, 1)[n] * d(1, 0)[n] - d(0, 0)[n] * d(1, 1)[n];
  }
  // The bracket is quadratic, so d_3 v^3 times it is a triple product.
  std::vector<double> ones(d33.size(), 1.0);
  out.rewritten = spectral::physical_triple_sum(d33, bracket, ones);

  double scale = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double l3 = 0.0;
      for (double x : d(i, j)) l3 += std::abs(x) * x * x;
      scale = std::max(scale, Grid::volume() * l3 / static_cast<double>(d33.size()));
    }
  out.residual = std::abs(out.direct - out.rewritten) / std::max(std::abs(out.direct), scale);
  return out;
}

DivfreeIdentity divfree_identity(const VectorField& w) {
  DivfreeIdentity out;
  out.input_divfree = w.divfree() || w.divergence_defect() <= spectral::kDivfreeTolerance;
  const ScalarField d3w3 = spectral::derivative(w[2], 3);
  const ScalarField divh = spectral::derivative(w[0], 1) + spectral::derivative(w[1], 2);
  out.d3w3_sq = spectral::l2_norm_squared(d3w3);
  out.divh_wh_sq = spectral::l2_norm_squared(divh);
  const double scale = std::max(out.d3w3_sq, out.divh_wh_sq);
  out.residual = scale > 0.0 ? std::abs(out.d3w3_sq - out.divh_wh_sq) / scale : 0.0;
  out.grad_w3_sq = weighted_energy(VectorField(ScalarField(w.grid()), ScalarField(w.grid()), w[2]),
                                   [](const auto& k) { return k.norm2(); });
  out.grad_h_w_sq = weighted_energy(w, [](const auto& k) { return k.horizontal_norm2(); });
  out.inequality_holds = out.grad_w3_sq <= 2.0 * out.grad_h_w_sq * (1.0 + 1e-12);
  return out;
}

std::vector<double> trapezoid_running(const std::vector<double>& t, const std::vector<double>& f) {
  if (t.size() != f.size()) throw std::invalid_argument("trapezoid_running: size mismatch");
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t n = 1; n < t.size(); ++n) out[n] = out[n - 1] + 0.5 * (t[n] - t[n - 1]) * (f[n] + f[n - 1]);
  return out;
}

std::vector<double> criterion_p_integral(const std::vector<Record>& records, double p) {
  if (!(p >= 2.0)) throw std::invalid_argument("criterion exponent must be >= 2");
  std::vector<double> t, f;
  for (const auto& r : records) {
    t.push_back(r.t);
    f.push_back(lookup(r.crit_integrand, p));
  }
  return trapezoid_running(t, f);
}

std::vector<LowerBoundSample> leray_lower_bounds(const std::vector<Snapshot>& snapshots, double t_star, double gamma,
                                                 bool with_besov) {
  if (!(gamma > 0.0 && gamma < 0.5)) throw std::invalid_argument("gamma must lie in (0, 1/2)");
  std::vector<LowerBoundSample> out;
  for (const auto& s : snapshots) {
    if (!(s.t < t_star)) throw std::invalid_argument("presumed blow-up time must exceed every sample time");
    LowerBoundSample b;
    b.t = s.t;
    b.tau = t_star - s.t;
    b.grad_sq = weighted_energy(s.v, [](const auto& k) { return k.norm2(); });
    b.h_norm = norms::hs_norm_3d(s.v, 0.5 + 2.0 * gamma);
    if (with_besov) b.besov_heat = norms::heat_besov_sup(s.v, gamma).value;
    b.c_grad = b.tau * b.grad_sq * b.grad_sq;
    b.c_sobolev = std::pow(b.tau, gamma) * b.h_norm;
    b.c_besov = std::pow(b.tau, gamma) * b.besov_heat;
    out.push_back(b);
  }
  return out;
}

std::vector<Theorem13Sample> theorem13_bound(const std::vector<Record>& records, double t_star) {
  std::vector<Theorem13Sample> out(records.size());
  double sup = 0.0;
  for (std::size_t n = records.size(); n-- > 0;) {
    const Record& r = records[n];
    if (!(r.t < t_star)) throw std::invalid_argument("presumed blow-up time must exceed every record time");
    sup = std::max(sup, r.v3_h12);
    const double l2_sq = 2.0 * r.energy;
    Theorem13Sample& s = out[n];
    s.t = r.t;
    s.future_sup = sup;
    s.log_factor = std::sqrt(std::log(std::numbers::e + l2_sq * l2_sq / (t_star - r.t)));
    s.implied_c0 = s.future_sup * s.log_factor;
  }
  return out;
}

namespace {

void fill_running_max(LogNormSeries& s) {
  s.running_max = s.values;
  for (auto& row : s.running_max)
    for (std::size_t n = 1; n < row.size(); ++n) row[n] = std::max(row[n], row[n - 1]);
}

}  // namespace

LogNormSeries log_norm_monitor(const std::vector<Snapshot>& snapshots, const std::vector<double>& E) {
  LogNormSeries s;
  s.E = E;
  s.values.assign(E.size(), {});
  for (const auto& snap : snapshots) {
    s.t.push_back(snap.t);
    for (std::size_t e = 0; e < E.size(); ++e) s.values[e].push_back(norms::log_weighted_norm(snap.v[2], E[e]));
  }
  fill_running_max(s);
  return s;
}

LogNormSeries log_norm_monitor(const std::vector<Record>& records) {
  LogNormSeries s;
  if (records.empty()) return s;
  for (const auto& [E, value] : records.front().v3_log) s.E.push_back(E);
  s.values.assign(s.E.size(), {});
  for (const auto& r : records) {
    s.t.push_back(r.t);
    for (std::size_t e = 0; e < s.E.size(); ++e) s.values[e].push_back(lookup(r.v3_log, s.E[e]));
  }
  fill_running_max(s);
  return s;
}

void write_csv(const std::vector<Record>& records, std::ostream& out) {
  out << "t,energy,diss,gh_l2,gh_h1,e1,e2,e3,e4,v3_h12,v3_h32,cum_diss";
  if (!records.empty()) {
    for (const auto& [E, v] : records.front().v3_log) out << ",v3_log[" << E << "]";
    for (const auto& [p, v] : records.front().crit_p) out << ",crit_p[" << p << "]";
  }
  out << '\n' << std::setprecision(17);
  for (const auto& r : records) {
    out << r.t << ',' << r.energy << ',' << r.diss << ',' << r.gh_l2 << ',' << r.gh_h1 << ',' << r.e[0] << ','
        << r.e[1] << ',' << r.e[2] << ',' << r.e[3] << ',' << r.v3_h12 << ',' << r.v3_h32 << ',' << r.cum_diss;
    for (const auto& [E, v] : r.v3_log) out << ',' << v;
    for (const auto& [p, v] : r.crit_p) out << ',' << v;
    out << '\n';
  }
}

}  // namespace aniso::diagnostics
