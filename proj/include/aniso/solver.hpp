#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "aniso/diagnostics.hpp"
#include "aniso/spectral/field.hpp"

namespace aniso {

using spectral::Grid;
using spectral::VectorField;

class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

struct SolverConfig {
  Grid grid = Grid::cube(32);
  double dt = 1e-3;
  double t_end = 1.0;
  int output_stride = 1;
  nlohmann::json initial_data = {{"type", "taylor_green"}};
  bool dealias = true;
  int snapshot_stride = 0;  ///< 0: no checkpoint snapshots
  diagnostics::Options diagnostics;

  /// Parses and validates; messages name the offending field.
  static SolverConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  void validate() const;
};

/// Largest step allowed by the advective limit dt U k_c <= 0.4, with U the
/// peak speed and k_c the largest retained wavenumber per axis.
double stable_dt(const VectorField& v);

struct SolverState {
  double t = 0.0;
  VectorField v;
  double cumulative_dissipation = 0.0;
};

/// -P div(v (x) v), 2/3-rule truncated when `dealias` is set.
VectorField nonlinear_term(const VectorField& v, bool dealias = true);

enum class StepStatus { ok, blowup_suspected };

struct StepResult {
  SolverState state;  ///< the input state when the step failed
  StepStatus status = StepStatus::ok;
};

/// Integrating-factor midpoint step. The Stokes part is integrated exactly;
/// the dissipation integral uses the trapezoid rule on the mode energies in
/// the integrating-factor frame, exact for pure heat flow.
/// `grad_limit` > 0 flags blow-up when ||grad v||^2 exceeds it.
StepResult step(const SolverState& state, double dt, bool dealias = true, double grad_limit = 0.0);

enum class RunStatus { completed, blowup_suspected };
std::string to_string(RunStatus status);

struct Trajectory {
  std::vector<diagnostics::Record> records;
  std::vector<diagnostics::Snapshot> snapshots;
  RunStatus status = RunStatus::completed;
  long steps = 0;
};

/// Called for every emitted record (for streaming output).
using RecordSink = std::function<void(const diagnostics::Record&)>;

/// Runs from the configured initial data. Throws ConfigError when the
/// initial data violate the stability limit.
Trajectory run(const SolverConfig& config, const RecordSink& sink = {});
Trajectory run(const SolverConfig& config, const VectorField& v0, const RecordSink& sink = {});

}  // namespace aniso
