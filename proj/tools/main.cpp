#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "critns/error.hpp"
#include "critns_cli/commands.hpp"

using namespace critns::cli;

int main(int argc, char** argv) {
  CLI::App app{"Critical-norm certifier and Navier-Stokes experiment driver"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  std::string snapshot;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", config_path, "INI or JSON configuration file");
    if (needs_config) c->required();
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--threads", threads, "Worker threads (fallback: CRITNS_THREADS)");
    sub->add_option("--seed", seed, "Seed override for random data");
  };
  auto* certify = app.add_subcommand("certify", "Evaluate the smallness condition for one datum");
  auto* simulate = app.add_subcommand("simulate", "Evolve a datum and record monitored norms");
  auto* gronwall = app.add_subcommand("gronwall", "Solve and verify extremal Gronwall problems");
  auto* sweep = app.add_subcommand("sweep", "Sweep a data family along amplitude or eps");
  auto* norms = app.add_subcommand("norms", "Evaluate norms of a CNSF snapshot");
  for (auto* s : {certify, simulate, gronwall, sweep}) add_common(s, true);
  add_common(norms, false);
  norms->add_option("snapshot", snapshot, "CNSF file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    Options opt;
    opt.out = out_dir;
    opt.threads = resolve_threads(threads);
    opt.seed = seed;
    if (norms->parsed()) return cmd_norms(snapshot, opt, std::cout);

    Config cfg = Config::load(config_path);
    if (seed) cfg.set("datum.seed", *seed);
    if (certify->parsed()) return cmd_certify(cfg, opt);
    if (simulate->parsed()) return cmd_simulate(cfg, opt);
    if (gronwall->parsed()) return cmd_gronwall(cfg, opt);
    if (sweep->parsed()) return cmd_sweep(cfg, opt);
  } catch (const critns::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
