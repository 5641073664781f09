#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "nct/experiments.hpp"

using namespace nct;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path write_tmp(const std::string& name, const json& j) {
  fs::path dir = fs::temp_directory_path() / "nct_test_cfg";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << j.dump(2);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

json base_config() {
  return json{{"theta", {{0.0, 0.25}, {-0.25, 0.0}}},
              {"cutoff", 4},
              {"margin", 2},
              {"kind", "spectrum"},
              {"operator", "d1^2 + d2^2"},
              {"out", (fs::temp_directory_path() / "nct_test_out").string()}};
}

}  // namespace

TEST_CASE("config validation refuses malformed input") {
  json bad = base_config();
  bad["theta"] = {{0.0, 0.25}, {0.25, 0.0}};  // not antisymmetric
  CHECK_THROWS_AS(load_config(write_tmp("bad_theta.json", bad)), ConfigError);

  bad = base_config();
  bad["cutoff"] = 1;
  CHECK_THROWS_AS(load_config(write_tmp("bad_cutoff.json", bad)), ConfigError);

  bad = base_config();
  bad["kind"] = "frobnicate";
  CHECK_THROWS_AS(load_config(write_tmp("bad_kind.json", bad)), ConfigError);

  bad = base_config();
  bad.erase("theta");
  CHECK_THROWS_AS(load_config(write_tmp("no_theta.json", bad)), ConfigError);
}

TEST_CASE("config hash is stable and sensitive") {
  ExperimentConfig a = load_config(write_tmp("h1.json", base_config()));
  ExperimentConfig b = load_config(write_tmp("h2.json", base_config()));
  CHECK(a.hash() == b.hash());
  json other = base_config();
  other["cutoff"] = 5;
  ExperimentConfig c = load_config(write_tmp("h3.json", other));
  CHECK(a.hash() != c.hash());
}

TEST_CASE("spectrum experiment writes a report and a deterministic CSV") {
  fs::path out = fs::temp_directory_path() / "nct_test_out_spec";
  fs::remove_all(out);
  json cfg_json = base_config();
  cfg_json["out"] = out.string();
  ExperimentConfig cfg = load_config(write_tmp("spec.json", cfg_json));
  REQUIRE(run_experiment(cfg) == 0);

  REQUIRE(fs::exists(out / "report.json"));
  json report = json::parse(slurp(out / "report.json"));
  CHECK(report["kind"] == "spectrum");
  CHECK(report["config_hash"] == cfg.hash());
  CHECK(report["library_version"] == kLibraryVersion);
  // Laplacian on the 9x9 box: eigenvalues are |k|^2, max modulus 32
  CHECK(report["eigenvalue_count"] == 81);
  CHECK(std::abs(report["max_modulus"].get<double>() - 32.0) < 1e-9);

  std::string csv1 = slurp(out / "spectrum.csv");
  REQUIRE(run_experiment(cfg) == 0);
  CHECK(slurp(out / "spectrum.csv") == csv1);
  CHECK(csv1.substr(0, 6) == "re,im\n");
}

TEST_CASE("compose-check experiment flags failure via exit code") {
  fs::path out = fs::temp_directory_path() / "nct_test_out_comp";
  fs::remove_all(out);
  json cfg_json = base_config();
  cfg_json["kind"] = "compose-check";
  cfg_json["cutoff"] = 6;
  cfg_json["margin"] = 4;
  cfg_json["out"] = out.string();
  cfg_json["params"] = {{"tol", 1e-8}};
  ExperimentConfig cfg = load_config(write_tmp("comp.json", cfg_json));
  CHECK(run_experiment(cfg) == 0);

  // impossible tolerance: the same run must report numerical failure
  cfg_json["params"] = {{"tol", 1e-300}};
  ExperimentConfig hard = load_config(write_tmp("comp2.json", cfg_json));
  CHECK(run_experiment(hard) == 2);
}
