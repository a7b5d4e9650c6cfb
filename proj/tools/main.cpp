#include <cstdio>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"band-resolved spectral MHD experiment driver"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
  app.add_option("--config", config_path, "experiment description file");
  app.add_option("--out", out_dir, "output directory (overrides the config)");
  app.add_option("--seed", seed, "random seed (overrides the config)");
  app.add_option("--threads", threads,
                 "worker threads for independent bank elements "
                 "(overrides the config and BMHD_THREADS)");

  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"lp-check", "dyadic partition identities and band reconstruction"},
      {"bony-check", "paraproduct + remainder reassembly of products"},
      {"norms", "norm battery on a random field and its heat flow"},
      {"solve", "energy-audited nonlinear run from smooth random data"},
      {"picard", "contraction of the mild-solution iteration"},
      {"smalldata", "small-data persistence of the critical norm"},
      {"local", "large-data local convergence of the iteration"},
      {"calderon", "low/high split, companion run, and recombination"},
      {"weakstrong", "two-resolution stability envelope"},
      {"trilinear", "advective form interval bounds, two-phase"},
      {"growth", "split-pipeline growth across data scales"},
      {"lorentz-check", "Lorentz inequality suite and heat-flow bound"}};
  for (const auto& [name, desc] : subcommands)
    app.add_subcommand(name, desc)->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    bmhd::RunConfig cfg;
    if (!config_path.empty()) cfg = bmhd::load_config(config_path);
    cfg.experiment = app.get_subcommands().front()->get_name();
    if (app.count("--out")) cfg.out_dir = out_dir;
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--threads")) cfg.threads = threads;
    bmhd::validate_config(cfg);
    return bmhd::run_experiment(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
