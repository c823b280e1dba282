#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "markovsig/commands.hpp"
#include "markovsig/error.hpp"

namespace fs = std::filesystem;
using namespace markovsig;
using json = nlohmann::json;

namespace {

std::string scenario(const std::string& name) {
  return std::string(MARKOVSIG_SOURCE_DIR) + "/scenarios/" + name + ".json";
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("markovsig_cli_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_scenario(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "scenario.json";
  std::ofstream(p) << text;
  return p;
}

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::string& cmd, const fs::path& scen, const fs::path& out_dir) {
  CommandOptions o;
  o.scenario_path = scen.string();
  o.out_dir = out_dir.string();
  std::ostringstream out, err;
  const int c = run_command(cmd, o, out, err);
  return {c, out.str(), err.str()};
}

int shell(const std::string& args) {
  const std::string cmd = std::string("\"") + MARKOVSIG_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

const char* kSmall = R"({
  "name": "small",
  "model": {"kind": "lossy_dielectric", "a0": 0.6},
  "frequencies": [[1.0, 1.0], [0.5, 0.3], [2.0, 0.5]],
  "design": {"mode": "unit"},
  "measure": {"atoms": [-0.5, 0.5], "weights": [0.1, 0.9]},
  "verify": {"measures": 200, "operator_seeds": 5},
  "time": {"t_start": -2.0, "t_end": 1.0, "steps": 31, "t0": 0.0},
  "seed": 7
})";

}  // namespace

TEST_CASE("design on the dielectric scenario") {
  const fs::path dir = fresh_dir("design");
  const Run r = run("design", scenario("fig4_dielectric"), dir);
  REQUIRE(r.code == kExitOk);
  const json d = json::parse(slurp(dir / "design.json"));
  CHECK(d["m"] == 3);
  CHECK(d["mode"] == "unit");
  const double dmin = d["d_min"];
  CHECK(d["epsilon"].get<double>() == doctest::Approx(2.0 / std::pow(2 * dmin, 3)).epsilon(1e-14));
  CHECK(d["epsilon_observed"].get<double>() <= d["epsilon"].get<double>() + 1e-9);
  CHECK(d["convergent_flag"] == true);
  CHECK(d["alphas"].size() == 3);
  CHECK(d["z_points"][0][0].get<double>() == doctest::Approx(2.5));
  CHECK(d["z_points"][0][1].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("duplicate frequency is a validation error naming the index") {
  const fs::path dir = fresh_dir("dup");
  const fs::path scen = write_scenario(dir, R"({"model": {"kind": "plasma"},
    "frequencies": [[1, 1], [1, 1]], "design": {"mode": "unit"}})");
  const Run r = run("design", scen, dir);
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("frequencies[1]") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "design.json"));
}

TEST_CASE("malformed and invalid scenarios exit 2") {
  const fs::path dir = fresh_dir("bad");
  const std::vector<std::string> bad = {
      "{ not json",
      R"({"model": {"kind": "nope"}, "frequencies": [[1, 1]]})",
      R"({"model": {"kind": "plasma"}, "frequencies": []})",
      R"({"model": {"kind": "plasma", "a0": -1}, "frequencies": [[1, 1]]})",
      R"({"model": {"kind": "plasma"}, "frequencies": [[0, 0]]})",
      R"({"model": {"kind": "plasma"}, "frequencies": [[1, 1]], "design": {"mode": "moments", "n": -1}})",
      R"({"model": {"kind": "plasma"}, "frequencies": [[1, 1]], "design": {"mode": "frequency_target"}})",
  };
  for (const std::string& b : bad) {
    const fs::path scen = write_scenario(dir, b);
    const Run r = run("design", scen, dir);
    CHECK_MESSAGE(r.code == kExitValidation, b);
    CHECK_FALSE(r.err.empty());
  }
  CHECK(run("design", dir / "missing.json", dir).code == kExitValidation);
  CHECK(run("frobnicate", write_scenario(dir, kSmall), dir).code == kExitValidation);
}

TEST_CASE("poles too close to the segment clear the convergence flag") {
  const fs::path dir = fresh_dir("close");
  // custom z = w: design points sit at the frequencies themselves, d_min = 0.4
  const fs::path scen = write_scenario(dir, R"({"model": {"kind": "custom",
      "z_num": [[0, 0], [1, 0]], "z_den": [[1, 0]]},
    "frequencies": [[0.0, 0.4], [0.5, 0.6], [-0.3, 0.9]], "design": {"mode": "unit"}})");
  const Run r = run("design", scen, dir);
  REQUIRE(r.code == kExitOk);
  const json d = json::parse(slurp(dir / "design.json"));
  CHECK(d["d_min"].get<double>() == doctest::Approx(0.4));
  CHECK(d["convergent_flag"] == false);
  CHECK_FALSE(d["warnings"].empty());
}

TEST_CASE("verify is deterministic and passes") {
  const fs::path dir = fresh_dir("verify");
  const fs::path scen = write_scenario(dir, kSmall);
  REQUIRE(run("verify", scen, dir).code == kExitOk);
  const std::string first = slurp(dir / "verify.json");
  REQUIRE(run("verify", scen, dir).code == kExitOk);
  CHECK(slurp(dir / "verify.json") == first);
  const json v = json::parse(first);
  CHECK(v["all_passed"] == true);
  CHECK(v["operator"]["all_certified"] == true);
  CHECK(v["worst_case_point_mass"]["matches_sup"] == true);
  CHECK(v["stress"]["within_epsilon"] == true);

  CommandOptions o;
  o.scenario_path = scen.string();
  o.out_dir = dir.string();
  o.seed = 8;
  std::ostringstream out, err;
  REQUIRE(run_command("verify", o, out, err) == kExitOk);
  const json v2 = json::parse(slurp(dir / "verify.json"));
  CHECK(v2["seed"] == 8);
  CHECK(v2["operator"]["max_norm"] != v["operator"]["max_norm"]);
}

TEST_CASE("simulate writes the response table") {
  const fs::path dir = fresh_dir("simulate");
  REQUIRE(run("simulate", scenario("fig4_dielectric"), dir).code == kExitOk);
  const auto rows = read_csv(dir / "simulate.csv");
  REQUIRE(rows.size() == 242);
  CHECK(rows[0] == std::vector<std::string>{"t", "re_u", "im_u", "re_v", "im_v"});
  // t0 = 0 is row 201 (t_start -10, step 0.05)
  CHECK(std::stod(rows[201][0]) == doctest::Approx(0.0));
  const double re_v = std::stod(rows[201][3]);
  CHECK(std::abs(re_v - 0.6) <= 0.6 * 0.1402);

  const fs::path dir6 = fresh_dir("simulate6");
  REQUIRE(run("simulate", scenario("fig6_freq_target"), dir6).code == kExitOk);
  CHECK(fs::exists(dir6 / "simulate_v0.csv"));
}

TEST_CASE("grid-size override") {
  const fs::path dir = fresh_dir("grid");
  const fs::path scen = write_scenario(dir, kSmall);
  CommandOptions o;
  o.scenario_path = scen.string();
  o.out_dir = dir.string();
  o.grid_size = 11;
  std::ostringstream out, err;
  REQUIRE(run_command("simulate", o, out, err) == kExitOk);
  CHECK(read_csv(dir / "simulate.csv").size() == 12);
  o.grid_size = 0;
  CHECK(run_command("simulate", o, out, err) == kExitValidation);
}

TEST_CASE("bounds writes one table per case and pinches at t0") {
  const fs::path dir = fresh_dir("bounds");
  REQUIRE(run("bounds", scenario("fig4_dielectric"), dir).code == kExitOk);
  for (const char* label : {"m0", "m0_m1", "m0_m1_a0"}) {
    const auto rows = read_csv(dir / (std::string("bounds_") + label + ".csv"));
    REQUIRE(rows.size() == 242);
    CHECK(rows[0] == std::vector<std::string>{"t", "lower", "upper"});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) <= std::stod(rows[i][2]));
  }
  const json s = json::parse(slurp(dir / "bounds_summary.json"));
  const double eps = s["epsilon"];
  const json& known = s["cases"][2];
  CHECK(known["a0_known"] == true);
  CHECK(known["gap_t0"].get<double>() <= 2 * 0.6 * eps);
  CHECK(known["lower_t0"].get<double>() <= 0.6);
  CHECK(known["upper_t0"].get<double>() >= 0.6);
}

TEST_CASE("infeasible moments exit 2") {
  const fs::path dir = fresh_dir("moments");
  const fs::path scen = write_scenario(dir, R"({"model": {"kind": "plasma"},
    "frequencies": [[1, 1], [0.5, 0.3]], "design": {"mode": "unit"},
    "bounds": {"cases": [{"label": "bad", "moments": [2.0]}]},
    "time": {"t_start": -1, "t_end": 1, "steps": 5, "t0": 0}})");
  const Run r = run("bounds", scen, dir);
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("bounds.cases[0]") != std::string::npos);
}

TEST_CASE("measure JSON round trip is byte-identical") {
  const DiscreteMeasure mu = random_measure(6, 99);
  const std::string a = measure_to_json(mu);
  const std::string b = measure_to_json(measure_from_json(a));
  CHECK(a == b);
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK_THROWS_AS(measure_from_json(R"({"atoms": [2.0], "weights": [1.0]})"), Error);
}

TEST_CASE("region report") {
  const fs::path dir = fresh_dir("region");
  REQUIRE(run("region", scenario("fig7_regions"), dir).code == kExitOk);
  const json r = json::parse(slurp(dir / "region.json"));
  CHECK(r["R"].get<double>() == doctest::Approx(2.061).epsilon(0.001 / 2.061));
  CHECK(r["d0"].get<double>() >= r["d0_lower_bound"].get<double>());
  for (const json& p : r["design_points"]) CHECK(p["in_H"] == true);
  CHECK(r["probes"].size() == 5);
  CHECK_FALSE(r["boundary_samples"].empty());
}

TEST_CASE("binary exit codes") {
  const fs::path dir = fresh_dir("binary");
  const std::string out = " --out \"" + dir.string() + "\"";
  CHECK(shell("design --scenario \"" + scenario("fig4_dielectric") + "\"" + out) == 0);
  CHECK(fs::exists(dir / "design.json"));
  CHECK(shell("simulate --scenario \"" + scenario("fig4_dielectric") + "\" --grid-size 0" + out) == 2);
  CHECK(shell("design" + out) == 2);
  CHECK(shell("bogus --scenario x") == 2);
  const fs::path scen = write_scenario(dir, kSmall);
  CHECK(shell("verify --scenario \"" + scen.string() + "\" --seed 3" + out) == 0);
  CHECK(json::parse(slurp(dir / "verify.json"))["seed"] == 3);
}
