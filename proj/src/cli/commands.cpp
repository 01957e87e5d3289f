#include "aniso/cli/commands.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "aniso/diagnostics.hpp"
#include "aniso/inequality_lab.hpp"
#include "aniso/initial_data.hpp"
#include "aniso/littlewood_paley.hpp"
#include "aniso/norms.hpp"
#include "aniso/solver.hpp"
#include "aniso/spectral/field_io.hpp"
#include "aniso/spectral/ops.hpp"

namespace aniso::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(what + ": " + e.what());
  }
}

std::string hex(const unsigned char* data, unsigned len) {
  std::ostringstream s;
  for (unsigned i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << int(data[i]);
  return s.str();
}

spectral::FieldFile load_field(const std::string& path) {
  try {
    return spectral::read_field_file(path);
  } catch (const spectral::FieldFormatError& e) {
    throw UsageError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// --------------------------------------------------------------------------

struct RunArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int cmd_run(const RunArgs& a, int threads, std::ostream& out, std::ostream& err) {
  const std::string text = read_text(a.config);
  const nlohmann::json raw = parse_json(text, a.config);
  SolverConfig config;
  VectorField v0 = VectorField::zeros(Grid::cube(8));
  try {
    config = SolverConfig::from_json(raw);
    if (a.seed) {
      if (config.initial_data.value("type", "") != "random") throw ConfigError("--seed applies to random initial data only");
      config.initial_data["seed"] = *a.seed;
    }
    v0 = make_initial_data(config.grid, config.initial_data);
    VectorField start = spectral::leray_project(v0);
    if (config.dealias) {
      start = VectorField(spectral::truncate_to_dealias_set(start[0]), spectral::truncate_to_dealias_set(start[1]),
                          spectral::truncate_to_dealias_set(start[2]));
    }
    const double limit = stable_dt(start);
    if (config.dt > limit * (1.0 + 1e-12)) {
      throw ConfigError("config.dt: exceeds the advective stability limit " + std::to_string(limit));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const spectral::FieldFormatError& e) {
    throw UsageError(e.what());
  }

  const fs::path dir(a.out);
  fs::create_directories(dir);
  std::ofstream traj(dir / "trajectory.jsonl", std::ios::trunc);
  if (!traj) throw UsageError("cannot write to " + dir.string());
  Trajectory t = run(config, v0, [&](const diagnostics::Record& r) { traj << r.to_json().dump() << '\n'; });
  traj.close();

  if (!t.snapshots.empty()) {
    fs::create_directories(dir / "checkpoints");
    for (std::size_t n = 0; n < t.snapshots.size(); ++n) {
      std::ostringstream name;
      name << "snapshot_" << std::setw(5) << std::setfill('0') << n << ".anbf";
      spectral::write_field_file(dir / "checkpoints" / name.str(), t.snapshots[n].v,
                                 {{"t", t.snapshots[n].t}, {"config_hash", git_blob_sha1(text)}});
    }
  }

  const std::string records = read_text(dir / "trajectory.jsonl");
  const nlohmann::json manifest = {{"config_path", a.config},
                                   {"output_dir", a.out},
                                   {"config_hash", git_blob_sha1(text)},
                                   {"tool_version", kToolVersion},
                                   {"status", to_string(t.status)},
                                   {"steps", t.steps},
                                   {"records", t.records.size()},
                                   {"threads", threads},
                                   {"trajectory_hash", git_blob_sha1(records)},
                                   {"config", config.to_json()}};
  std::ofstream(dir / "manifest.json", std::ios::trunc) << manifest.dump(2) << '\n';
  out << "run " << to_string(t.status) << ": " << t.steps << " steps, " << t.records.size() << " records -> "
      << dir.string() << '\n';
  if (t.status != RunStatus::completed) {
    err << "blow-up suspected at t = " << t.records.back().t << '\n';
    return kNumericalFailure;
  }
  return kSuccess;
}

// --------------------------------------------------------------------------

int cmd_norms(const std::string& field_path, const std::string& spec_arg, const std::string& out_path,
              std::ostream& out) {
  const std::string spec_text = fs::exists(spec_arg) ? read_text(spec_arg) : spec_arg;
  norms::NormSpec spec;
  try {
    spec = norms::norm_spec_from_json(parse_json(spec_text, "--spec"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const spectral::FieldFile file = load_field(field_path);
  std::vector<ScalarField> comps = file.components;
  if (file.divfree && comps.size() == 3) {
    const VectorField v = file.as_vector();
    comps = {v[0], v[1], v[2]};
  }
  norms::NormValue value;
  try {
    value = norms::evaluate(spec, comps);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const nlohmann::json record = {{"field", field_path},
                                 {"spec", norms::to_json(spec)},
                                 {"value", value.value},
                                 {"error_estimate", value.error_estimate}};
  if (!out_path.empty()) {
    std::ofstream(out_path, std::ios::trunc) << record.dump(2) << '\n';
  }
  out << record.dump() << '\n';
  if (!std::isfinite(value.value)) return kNumericalFailure;
  return kSuccess;
}

// --------------------------------------------------------------------------

std::string format_number(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

int cmd_verify(const std::string& suite, const lab::SuiteOptions& options, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
  const auto& names = lab::suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    std::ostringstream usage;
    usage << "unknown suite '" << suite << "'; expected one of:";
    for (const auto& n : names) usage << ' ' << n;
    throw UsageError(usage.str());
  }
  const lab::SuiteResult result = lab::run_suite(suite, options);
  nlohmann::json report = nlohmann::json::array();
  for (const auto& r : result.reports) report.push_back(r.to_json());

  std::ostream& table = out_path.empty() ? err : out;
  table << std::left << std::setw(40) << "check" << std::setw(14) << "lhs" << std::setw(14) << "ratio"
        << std::setw(14) << "implied C" << "status\n";
  for (const auto& r : result.reports) {
    table << std::left << std::setw(40) << r.name << std::setw(14) << format_number(r.lhs) << std::setw(14)
          << format_number(r.ratio) << std::setw(14)
          << (r.implied_constant ? format_number(*r.implied_constant) : std::string("-"))
          << (r.pass ? (*r.pass ? "PASS" : "FAIL") : "report") << '\n';
  }
  table << result.reports.size() << " checks, " << result.hard_failures << " hard failures\n";
  if (out_path.empty()) {
    out << report.dump(2) << '\n';
  } else {
    std::ofstream(out_path, std::ios::trunc) << report.dump(2) << '\n';
  }
  return result.hard_failures > 0 ? kCheckFailure : kSuccess;
}

// --------------------------------------------------------------------------

int cmd_decompose(const std::string& field_path, double lambda, double Lambda, const std::string& prefix,
                  std::ostream& out) {
  const spectral::FieldFile file = load_field(field_path);
  if (!(lambda >= 0.0 && Lambda >= lambda)) throw UsageError("decompose requires 0 <= lambda <= Lambda");
  std::vector<ScalarField> flat, natural, sharp;
  for (const auto& c : file.components) {
    const lp::BandTriple b = lp::band_split(c, lambda, Lambda);
    flat.push_back(b.flat);
    natural.push_back(b.natural);
    sharp.push_back(b.sharp);
  }
  const nlohmann::json prov = {{"source", field_path}, {"lambda", lambda}, {"Lambda", Lambda}};
  for (const auto& [name, comps] : {std::pair{"flat", &flat}, {"natural", &natural}, {"sharp", &sharp}}) {
    nlohmann::json p = prov;
    p["band"] = name;
    const std::string path = prefix + "." + name + ".anbf";
    // Horizontal band truncation commutes with the Leray projector.
    spectral::write_field_file(path, *comps, file.divfree, p);
    out << path << '\n';
  }
  return kSuccess;
}

// --------------------------------------------------------------------------

int cmd_report(const std::string& trajectory, const std::string& out_path, std::ostream& out) {
  std::ifstream in(trajectory);
  if (!in) throw UsageError("cannot read " + trajectory);
  std::vector<diagnostics::Record> records;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      records.push_back(diagnostics::Record::from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(trajectory + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  if (out_path.empty()) {
    diagnostics::write_csv(records, out);
  } else {
    std::ofstream csv(out_path, std::ios::trunc);
    diagnostics::write_csv(records, csv);
  }
  return kSuccess;
}

}  // namespace

std::string git_blob_sha1(const std::string& content) {
  const std::string data = "blob " + std::to_string(content.size()) + std::string(1, '\0') + content;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha1(), nullptr);
  return hex(md, len);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ANISO_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anisotropic Navier-Stokes toolkit: solver, norms and inequality checks"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: ANISO_THREADS or 1)")->check(CLI::NonNegativeNumber);

  RunArgs run_args;
  std::uint64_t run_seed = 0;
  auto* run_cmd = app.add_subcommand("run", "integrate a configuration and write a trajectory");
  run_cmd->add_option("--config", run_args.config, "solver configuration (JSON)")->required();
  run_cmd->add_option("--out", run_args.out, "output directory")->required();
  auto* run_seed_opt = run_cmd->add_option("--seed", run_seed, "override the random initial-data seed");

  std::string field_path, spec, out_path;
  auto* norms_cmd = app.add_subcommand("norms", "evaluate a norm on a stored field");
  norms_cmd->add_option("--field", field_path, "field file")->required();
  norms_cmd->add_option("--spec", spec, "NormSpec JSON or a file holding it")->required();
  norms_cmd->add_option("--out", out_path, "also write the record here");

  std::string suite = "all";
  lab::SuiteOptions suite_options;
  auto* verify_cmd = app.add_subcommand("verify", "run inequality and identity suites");
  verify_cmd->add_option("--suite", suite, "identities|bernstein|trace|products|lemmas|bands|all");
  verify_cmd->add_option("--seed", suite_options.seed, "corpus seed (0: default)");
  verify_cmd->add_option("--grid", suite_options.n, "grid size n (n^3)")->check(CLI::Range(8, 256));
  verify_cmd->add_option("--corpus-size", suite_options.corpus_size, "number of corpus fields")
      ->check(CLI::PositiveNumber);
  double shell_max = 0.0;
  verify_cmd->add_option("--shell-max", shell_max, "largest corpus wavenumber (default: dealias cutoff)")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out", out_path, "JSON report path (default: stdout)");

  double lambda = 0.0, Lambda = 0.0;
  std::string prefix;
  auto* decompose_cmd = app.add_subcommand("decompose", "split a field into flat/natural/sharp bands");
  decompose_cmd->add_option("--field", field_path, "field file")->required();
  decompose_cmd->add_option("--lambda", lambda, "lower cutoff")->required();
  decompose_cmd->add_option("--Lambda", Lambda, "upper cutoff")->required();
  decompose_cmd->add_option("--out", prefix, "output prefix")->required();

  std::string trajectory;
  auto* report_cmd = app.add_subcommand("report", "CSV pivot of a trajectory");
  report_cmd->add_option("--trajectory", trajectory, "trajectory.jsonl")->required();
  report_cmd->add_option("--out", out_path, "CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kUsageError;
  }

  const int n_threads = resolve_threads(threads);
  suite_options.threads = n_threads;
  try {
    if (*run_cmd) {
      if (*run_seed_opt) run_args.seed = run_seed;
      return cmd_run(run_args, n_threads, out, err);
    }
    if (*norms_cmd) return cmd_norms(field_path, spec, out_path, out);
    if (*verify_cmd) {
      if (shell_max > 0.0) suite_options.shell_max = shell_max;
      return cmd_verify(suite, suite_options, out_path, out, err);
    }
    if (*decompose_cmd) return cmd_decompose(field_path, lambda, Lambda, prefix, out);
    if (*report_cmd) return cmd_report(trajectory, out_path, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    if (*verify_cmd) err << verify_cmd->help();
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kUsageError;
}

}  // namespace aniso::cli
