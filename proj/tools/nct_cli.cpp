#include <iostream>

#include <CLI11.hpp>

#include "nct/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pseudodifferential calculus on noncommutative tori"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global options after the subcommand

  std::string config_path, out_dir;
  int threads = 0;
  bool verbose = false;
  app.add_option("--config", config_path, "experiment config (JSON)")->required();
  app.add_option("--out", out_dir, "output directory override");
  app.add_option("--threads", threads, "Eigen thread count (0 = default)");
  app.add_flag("--verbose", verbose, "print the report to stdout");

  // one subcommand per experiment kind; the kind in the config must match
  const std::vector<std::string> kinds = {"spectrum",        "compose-check", "parametrix-study",
                                          "resolvent-sweep", "minimal-growth", "schatten",
                                          "power",           "abs",            "trace-chain",
                                          "phi-check"};
  for (const auto& k : kinds) app.add_subcommand(k, "run a '" + k + "' experiment");

  CLI11_PARSE(app, argc, argv);

  try {
    nct::ExperimentConfig cfg = nct::load_config(config_path);
    std::string sub = app.get_subcommands().front()->get_name();
    if (cfg.kind != sub)
      throw nct::ConfigError("config kind '" + cfg.kind + "' does not match subcommand '" + sub +
                             "'");
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads > 0) Eigen::setNbThreads(threads);
    return nct::run_experiment(cfg, verbose);
  } catch (const nct::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const nct::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
