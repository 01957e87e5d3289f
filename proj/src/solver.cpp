#include "aniso/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aniso/initial_data.hpp"
#include "aniso/spectral/fft.hpp"
#include "aniso/spectral/ops.hpp"

namespace aniso {

using spectral::cplx;
using spectral::ScalarField;

namespace {

constexpr double kGrowthLimit = 1e6;

VectorField heat(const VectorField& v, double h) {
  auto m = [h](const spectral::Wavevector& k) { return std::exp(-h * k.norm2()); };
  VectorField out(v[0].filtered(m), v[1].filtered(m), v[2].filtered(m));
  return v.divfree() ? VectorField::certified(out[0], out[1], out[2]) : out;
}

VectorField axpy(const VectorField& x, double a, const VectorField& y) {
  return VectorField(x[0] + y[0] * a, x[1] + y[1] * a, x[2] + y[2] * a);
}

double grad_sq(const VectorField& v) {
  const Grid& g = v.grid();
  double sum = 0.0;
  g.for_each_mode([&](std::size_t n, const spectral::Wavevector& k) {
    const double amp = std::norm(v[0][n]) + std::norm(v[1][n]) + std::norm(v[2][n]);
    if (amp != 0.0) sum += k.norm2() * amp;
  });
  return Grid::volume() * sum;
}

bool finite(const VectorField& v) {
  for (int c = 0; c < 3; ++c)
    for (const cplx& z : v[c].coeffs())
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

// int_0^h |k|^2 a(s) ds where a(s) e^{2|k|^2 s} is interpolated linearly
// between a(0) and a(h).
double mode_dissipation(double k2, double a0, double a1, double h) {
  if (k2 == 0.0) return 0.0;
  const double x = std::min(2.0 * k2 * h, 700.0);
  double w0, w1;  // weights of a0 and a1, in units of h
  if (x < 1e-4) {
    w0 = 0.5 - x / 6.0 + x * x / 24.0;
    w1 = 0.5 + x / 6.0 + x * x / 24.0;
  } else {
    const double em = -std::expm1(-x);  // 1 - e^{-x}
    // g(s) = a0 + (a1 e^{x} - a0) s/h against e^{-x s/h}:
    // a0 [(1-e^{-x})/x - f(x)] + a1 e^{x} f(x), f(x) = (1 - e^{-x}(1+x)) / x^2.
    const double f = (em - x * std::exp(-x)) / (x * x);
    w0 = em / x - f;
    w1 = (std::expm1(x) - x) / (x * x);
  }
  return k2 * h * (w0 * a0 + w1 * a1);
}

double step_dissipation(const VectorField& a, const VectorField& b, double h) {
  const Grid& g = a.grid();
  double sum = 0.0;
  g.for_each_mode([&](std::size_t n, const spectral::Wavevector& k) {
    const double a0 = std::norm(a[0][n]) + std::norm(a[1][n]) + std::norm(a[2][n]);
    const double a1 = std::norm(b[0][n]) + std::norm(b[1][n]) + std::norm(b[2][n]);
    if (a0 == 0.0 && a1 == 0.0) return;
    sum += mode_dissipation(k.norm2(), a0, a1, h);
  });
  return Grid::volume() * sum;
}

double number_field(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(std::string("config.") + key + ": expected a number");
  return j[key].get<double>();
}

int integer_field(const nlohmann::json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw ConfigError(std::string("config.") + key + ": expected an integer");
  return j[key].get<int>();
}

std::vector<double> number_list(const nlohmann::json& j, const char* key, std::vector<double> fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_array()) throw ConfigError(std::string("config.diagnostics.") + key + ": expected an array");
  std::vector<double> out;
  for (const auto& x : j[key]) {
    if (!x.is_number()) throw ConfigError(std::string("config.diagnostics.") + key + ": expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

SolverConfig SolverConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  static const std::vector<std::string> known{"grid", "dt", "t_end", "output_stride", "initial_data",
                                              "dealias", "snapshot_stride", "diagnostics"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("config." + key + ": unknown field");
  }
  SolverConfig c;
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    try {
      if (g.is_number_integer()) {
        c.grid = Grid::cube(g.get<int>());
      } else if (g.is_array() && g.size() == 3) {
        c.grid = Grid(g[0].get<int>(), g[1].get<int>(), g[2].get<int>());
      } else {
        throw ConfigError("config.grid: expected an integer or [n1, n2, n3]");
      }
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("config.grid: expected integers");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config.grid: ") + e.what());
    }
  }
  c.dt = number_field(j, "dt", c.dt);
  c.t_end = number_field(j, "t_end", c.t_end);
  c.output_stride = integer_field(j, "output_stride", c.output_stride);
  c.snapshot_stride = integer_field(j, "snapshot_stride", c.snapshot_stride);
  if (j.contains("dealias")) {
    if (!j["dealias"].is_boolean()) throw ConfigError("config.dealias: expected a boolean");
    c.dealias = j["dealias"].get<bool>();
  }
  if (j.contains("initial_data")) c.initial_data = j["initial_data"];
  if (j.contains("diagnostics")) {
    const auto& d = j["diagnostics"];
    if (!d.is_object()) throw ConfigError("config.diagnostics: expected an object");
    c.diagnostics.log_E = number_list(d, "log_E", c.diagnostics.log_E);
    c.diagnostics.crit_p = number_list(d, "crit_p", c.diagnostics.crit_p);
  }
  c.validate();
  return c;
}

nlohmann::json SolverConfig::to_json() const {
  return {{"grid", {grid.n1(), grid.n2(), grid.n3()}},
          {"dt", dt},
          {"t_end", t_end},
          {"output_stride", output_stride},
          {"initial_data", initial_data},
          {"dealias", dealias},
          {"snapshot_stride", snapshot_stride},
          {"diagnostics", {{"log_E", diagnostics.log_E}, {"crit_p", diagnostics.crit_p}}}};
}

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("config.dt: must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("config.t_end: must be nonnegative");
  if (output_stride < 1) throw ConfigError("config.output_stride: must be >= 1");
  if (snapshot_stride < 0) throw ConfigError("config.snapshot_stride: must be >= 0");
  for (double E : diagnostics.log_E)
    if (!(E >= 0.0)) throw ConfigError("config.diagnostics.log_E: values must be >= 0");
  for (double p : diagnostics.crit_p)
    if (!(p >= 2.0)) throw ConfigError("config.diagnostics.crit_p: values must be >= 2");
  try {
    validate_initial_data(initial_data);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config.initial_data: ") + e.what());
  }
}

double stable_dt(const VectorField& v) {
  const Grid& g = v.grid();
  std::vector<double> speed2(g.size(), 0.0);
  for (int c = 0; c < 3; ++c) {
    const auto x = spectral::to_physical(v[c]);
    for (std::size_t n = 0; n < x.size(); ++n) speed2[n] += x[n] * x[n];
  }
  const double u = std::sqrt(*std::max_element(speed2.begin(), speed2.end()));
  const int kc = std::max({g.dealias_cutoff(0), g.dealias_cutoff(1), g.dealias_cutoff(2)});
  return u > 0.0 ? 0.4 / (u * kc) : std::numeric_limits<double>::infinity();
}

VectorField nonlinear_term(const VectorField& v, bool dealias) {
  const Grid& g = v.grid();
  if (v[0].is_zero() && v[1].is_zero() && v[2].is_zero()) return VectorField::zeros(g);
  std::array<std::vector<double>, 3> u;
  for (int c = 0; c < 3; ++c) u[std::size_t(c)] = spectral::to_physical(v[c]);

  std::array<std::vector<cplx>, 3> out;
  for (auto& o : out) o.assign(g.size(), cplx{});
  std::vector<double> prod(g.size());
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      for (std::size_t n = 0; n < g.size(); ++n) prod[n] = u[std::size_t(i)][n] * u[std::size_t(j)][n];
      const auto p = spectral::fft::analyze(g, prod);
      // -d_j (u_i u_j) feeds component i, -d_i (u_i u_j) feeds component j.
      g.for_each_mode([&](std::size_t n, const spectral::Wavevector& k) {
        if (g.on_nyquist(k)) return;
        if (k.is_zero() || (dealias && !g.in_dealias_set(k))) return;
        const cplx minus_i = cplx(0.0, -1.0) * p[n];
        out[std::size_t(i)][n] += minus_i * double(k[j]);
        if (j != i) out[std::size_t(j)][n] += minus_i * double(k[i]);
      });
    }
  }
  VectorField div(ScalarField::from_trusted(g, std::move(out[0])), ScalarField::from_trusted(g, std::move(out[1])),
                  ScalarField::from_trusted(g, std::move(out[2])));
  return spectral::leray_project(div);
}

StepResult step(const SolverState& state, double dt, bool dealias, double grad_limit) {
  const VectorField& v = state.v;
  const VectorField k1 = nonlinear_term(v, dealias);
  const VectorField half = spectral::leray_project(heat(axpy(v, 0.5 * dt, k1), 0.5 * dt));
  const VectorField k2 = nonlinear_term(half, dealias);
  const VectorField next = spectral::leray_project(axpy(heat(v, dt), dt, heat(k2, 0.5 * dt)));

  if (!finite(next)) return {state, StepStatus::blowup_suspected};
  if (grad_limit > 0.0 && grad_sq(next) > grad_limit) return {state, StepStatus::blowup_suspected};
  return {{state.t + dt, next, state.cumulative_dissipation + step_dissipation(v, next, dt)}, StepStatus::ok};
}

std::string to_string(RunStatus status) {
  return status == RunStatus::completed ? "completed" : "blowup_suspected";
}

Trajectory run(const SolverConfig& config, const RecordSink& sink) {
  return run(config, make_initial_data(config.grid, config.initial_data), sink);
}

Trajectory run(const SolverConfig& config, const VectorField& v0, const RecordSink& sink) {
  config.validate();
  spectral::require_same_grid(config.grid, v0.grid(), "run");
  VectorField start = spectral::leray_project(v0);
  if (config.dealias) {
    start = spectral::leray_project(VectorField(spectral::truncate_to_dealias_set(start[0]),
                                                spectral::truncate_to_dealias_set(start[1]),
                                                spectral::truncate_to_dealias_set(start[2])));
  }
  const double limit_dt = stable_dt(start);
  if (config.dt > limit_dt * (1.0 + 1e-12)) {
    throw ConfigError("config.dt: " + std::to_string(config.dt) + " exceeds the advective stability limit " +
                      std::to_string(limit_dt));
  }

  Trajectory traj;
  SolverState state{0.0, start, 0.0};
  const double g0 = grad_sq(start);
  const double grad_limit = g0 > 0.0 ? kGrowthLimit * g0 : 0.0;

  auto emit = [&](const SolverState& s) {
    const diagnostics::Record* prev = traj.records.empty() ? nullptr : &traj.records.back();
    traj.records.push_back(diagnostics::make_record(s.v, s.t, s.cumulative_dissipation, config.diagnostics, prev));
    if (sink) sink(traj.records.back());
  };
  emit(state);
  if (config.snapshot_stride > 0) traj.snapshots.push_back({state.t, state.v});

  const long steps = config.t_end > 0.0 ? static_cast<long>(std::ceil(config.t_end / config.dt - 1e-9)) : 0;
  for (long n = 1; n <= steps; ++n) {
    const double h = n == steps ? config.t_end - state.t : config.dt;
    StepResult r = step(state, h, config.dealias, grad_limit);
    if (r.status != StepStatus::ok) {
      traj.status = RunStatus::blowup_suspected;
      if (traj.records.back().t != state.t) emit(state);
      break;
    }
    state = std::move(r.state);
    if (n == steps) state.t = config.t_end;
    traj.steps = n;
    if (n % config.output_stride == 0 || n == steps) emit(state);
    if (config.snapshot_stride > 0 && (n % config.snapshot_stride == 0 || n == steps)) {
      traj.snapshots.push_back({state.t, state.v});
    }
  }
  return traj;
}

}  // namespace aniso
