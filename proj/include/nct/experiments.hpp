#pragma once

#include <filesystem>
#include <string>

#include "nct/classical.hpp"
#include "nct/parser.hpp"

namespace nct {

inline constexpr const char* kLibraryVersion = "0.1.0";

struct ExperimentConfig {
  ThetaPtr theta;
  int cutoff = 8;
  int margin = 4;
  std::string operator_src;  // DSL string, may be empty for kinds that ignore it
  std::string kind;
  unsigned seed = 1;
  std::string params_json;   // kind-specific parameters, raw JSON object
  std::filesystem::path out_dir;

  std::string hash() const;  // stable digest of all fields above
};

// Reads and validates a JSON config file. Throws ConfigError on any
// violation (theta not antisymmetric, N < 2, unknown kind, ...).
ExperimentConfig load_config(const std::filesystem::path& path);

// Runs one experiment, writing report.json plus CSV tables into out_dir.
// Returns 0 on success, 2 on numerical failure.
int run_experiment(const ExperimentConfig& config, bool verbose = false);

// Random differential operator of the given order with coefficient support
// radius <= support, deterministic in the rng seed.
DiffOp random_diffop(const ThetaPtr& theta, int max_order, int support, unsigned seed);

// Symbol of a differential operator: sum_alpha a_alpha xi^alpha.
ClassicalSymbol diffop_symbol(const DiffOp& op);

}  // namespace nct
