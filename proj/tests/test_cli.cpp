#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aniso/spectral/field_io.hpp"
#include "aniso/spectral/ops.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace aniso::spectral;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("aniso_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Result cli(const std::string& args, const std::string& env = "") {
  const char* exe = std::getenv("ANISO_CLI");
  REQUIRE(exe != nullptr);
  const fs::path o = scratch() / "stdout.txt", e = scratch() / "stderr.txt";
  const std::string cmd = env + " '" + std::string(exe) + "' " + args + " > '" + o.string() + "' 2> '" + e.string() + "'";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(o), slurp(e)};
}

fs::path write_json(const std::string& name, const json& j) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << j.dump(2);
  return p;
}

std::vector<json> lines(const fs::path& p) {
  std::vector<json> out;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("run: Taylor-Green preset") {
  const auto cfg = write_json("tg.json", {{"grid", 16}, {"dt", 0.01}, {"t_end", 0.2}, {"output_stride", 5},
                                          {"snapshot_stride", 10}, {"initial_data", {{"type", "taylor_green"}}}});
  const fs::path out = scratch() / "tg";
  const auto r = cli("run --config '" + cfg.string() + "' --out '" + out.string() + "'");
  REQUIRE(r.code == 0);
  const auto records = lines(out / "trajectory.jsonl");
  REQUIRE(records.size() == 5);
  const double e0 = records.front()["energy"].get<double>();
  for (const auto& rec : records) {
    const double t = rec["t"].get<double>();
    CHECK(rec["energy"].get<double>() == doctest::Approx(e0 * std::exp(-4 * t)).epsilon(1e-6));
  }
  const json manifest = json::parse(slurp(out / "manifest.json"));
  CHECK(manifest["status"] == "completed");
  CHECK(manifest["steps"] == 20);
  CHECK(manifest["config_hash"].get<std::string>().size() == 40);
  CHECK(manifest["tool_version"].is_string());
  CHECK(fs::exists(out / "checkpoints" / "snapshot_00002.anbf"));
  const auto snap = read_field_file(out / "checkpoints" / "snapshot_00002.anbf");
  CHECK(snap.divfree);
  CHECK(snap.provenance["t"].get<double>() == doctest::Approx(0.2));

  // identical manifest, identical records
  const fs::path again = scratch() / "tg_again";
  REQUIRE(cli("run --config '" + cfg.string() + "' --out '" + again.string() + "'").code == 0);
  CHECK(slurp(again / "trajectory.jsonl") == slurp(out / "trajectory.jsonl"));

  const auto csv = cli("report --trajectory '" + (out / "trajectory.jsonl").string() + "'");
  CHECK(csv.code == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 6);
}

TEST_CASE("run: t_end = 0 gives one record") {
  const auto cfg = write_json("zero.json", {{"grid", 16}, {"t_end", 0.0}});
  const fs::path out = scratch() / "zero";
  REQUIRE(cli("run --config '" + cfg.string() + "' --out '" + out.string() + "'").code == 0);
  CHECK(lines(out / "trajectory.jsonl").size() == 1);
}

TEST_CASE("run: malformed configs leave no output") {
  const fs::path bad_text = scratch() / "bad.json";
  std::ofstream(bad_text) << "{\"grid\": 16,\n \"dt\": }";
  const fs::path out = scratch() / "bad_out";
  auto r = cli("run --config '" + bad_text.string() + "' --out '" + out.string() + "'");
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK_FALSE(fs::exists(out));

  const auto unknown = write_json("unknown.json", {{"grid", 16}, {"viscosity", 2}});
  r = cli("run --config '" + unknown.string() + "' --out '" + out.string() + "'");
  CHECK(r.code == 2);
  CHECK(r.err.find("config.viscosity") != std::string::npos);
  CHECK_FALSE(fs::exists(out));

  const auto unstable = write_json("unstable.json", {{"grid", 16}, {"dt", 1.0}});
  CHECK(cli("run --config '" + unstable.string() + "' --out '" + out.string() + "'").code == 2);
  CHECK_FALSE(fs::exists(out));

  CHECK(cli("run --config '" + (scratch() / "missing.json").string() + "' --out '" + out.string() + "'").code == 2);
  CHECK(cli("run --out '" + out.string() + "'").code == 2);
}

TEST_CASE("norms on fixtures") {
  const Grid g = Grid::cube(16);
  const fs::path zero = scratch() / "zero.anbf";
  write_field_file(zero, {ScalarField(g), ScalarField(g), ScalarField(g)}, true);
  for (const char* spec : {R"({"kind":"sobolev3d","s":0.5})", R"({"kind":"heat_l2"})",
                           R"({"kind":"besov_h","s":1,"p":"inf","q":1,"component":0})"}) {
    const auto r = cli("norms --field '" + zero.string() + "' --spec '" + spec + "'");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["value"].get<double>() == 0.0);
  }

  const fs::path mode = scratch() / "mode.anbf";
  write_field_file(mode, {oracle::field(g, {{{1, 2, 2}, {0.5, 0.0}}})}, false);
  const auto s = cli("norms --field '" + mode.string() + "' --spec '{\"kind\":\"sobolev3d\",\"s\":0.5}'");
  REQUIRE(s.code == 0);
  // (2 pi)^3 |k| (|c|^2 + |c|^2) with |k| = 3, c = 1/2
  CHECK(json::parse(s.out)["value"].get<double>() == doctest::Approx(std::sqrt(oracle::kVolume * 1.5)).epsilon(1e-14));

  const auto spec_file = write_json("log0.json", {{"kind", "log_sobolev"}, {"E", 0}});
  const auto l = cli("norms --field '" + mode.string() + "' --spec '" + spec_file.string() + "'");
  REQUIRE(l.code == 0);
  CHECK(json::parse(l.out)["value"].dump() == json::parse(s.out)["value"].dump());

  CHECK(cli("norms --field '" + mode.string() + "' --spec '{\"kind\":\"nope\"}'").code == 2);
  CHECK(cli("norms --field '" + (scratch() / "none.anbf").string() + "' --spec '{\"kind\":\"heat_l2\"}'").code == 2);
}

TEST_CASE("verify suites and exit codes") {
  auto r = cli("verify --suite identities --corpus-size 8");
  CHECK(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report.size() == 6);
  CHECK(r.err.find("identity.parseval") != std::string::npos);

  r = cli("verify --suite trace --corpus-size 8");
  CHECK(r.code == 0);
  for (const auto& c : json::parse(r.out)) CHECK(c["pass"] == true);

  r = cli("verify --suite everything");
  CHECK(r.code == 2);
  CHECK(r.err.find("identities") != std::string::npos);
  CHECK(r.err.find("Usage") != std::string::npos);

  CHECK(cli("verify --grid 3").code == 2);
  CHECK(cli("frobnicate").code == 2);
}

TEST_CASE("thread count does not change results") {
  const std::string args = "verify --suite lemmas --grid 16 --corpus-size 6";
  const auto one = cli(args + " --threads 1");
  const auto four = cli(args + " --threads 4");
  const auto env = cli(args, "ANISO_THREADS=3");
  REQUIRE(one.code == 0);
  CHECK(one.out == four.out);
  CHECK(one.out == env.out);
}

TEST_CASE("decompose writes three bands") {
  const Grid g = Grid::cube(16);
  const ScalarField a = oracle::field(g, {{{1, 0, 1}, {1.0, 0.0}}, {{3, 0, 0}, {0.0, 1.0}}, {{4, 3, 2}, {0.5, 0.5}}});
  const fs::path in = scratch() / "bands.anbf";
  write_field_file(in, {a}, false);
  const fs::path prefix = scratch() / "split";
  REQUIRE(cli("decompose --field '" + in.string() + "' --lambda 2 --Lambda 5 --out '" + prefix.string() + "'").code == 0);
  const auto flat = read_field_file(prefix.string() + ".flat.anbf");
  const auto natural = read_field_file(prefix.string() + ".natural.anbf");
  const auto sharp = read_field_file(prefix.string() + ".sharp.anbf");
  CHECK(flat.components[0].coeff({1, 0, 1}) == cplx(1.0, 0.0));
  CHECK(natural.components[0].coeff({3, 0, 0}) == cplx(0.0, 1.0));
  CHECK(sharp.components[0].coeff({4, 3, 2}) == cplx(0.5, 0.5));
  CHECK(flat.components[0].coeff({3, 0, 0}) == cplx{});
  CHECK(cli("decompose --field '" + in.string() + "' --lambda 5 --Lambda 2 --out '" + prefix.string() + "'").code == 2);
}
