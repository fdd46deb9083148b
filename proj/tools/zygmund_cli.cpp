#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "zygmund/commands.hpp"
#include "zygmund/experiment_config.hpp"

int main(int argc, char** argv) {
  using zygmund::Command;

  CLI::App app{"Zygmund-sum deviation experiments on convolution classes"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> band_limit;
  std::optional<int> n;

  app.add_option("--config", config_path, "experiment config (key = value)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "seed for random densities");
  app.add_option("--band-limit", band_limit, "max/min ratio limit");

  struct Entry {
    const char* name;
    const char* help;
    Command cmd;
  };
  const Entry entries[] = {
      {"classify", "regime, Theta, B and convexity verdicts", Command::Classify},
      {"rate-check", "bounded-ratio check over n_grid", Command::RateCheck},
      {"witness", "lower-bound witness at one n", Command::Witness},
      {"table-vnad", "three-case table for psi(k) = k^-r", Command::TableVnad},
      {"best-approx", "best approximation vs Zygmund deviation",
       Command::BestApprox},
  };
  std::optional<Command> chosen;
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    if (e.cmd == Command::Witness) sub->add_option("--n", n, "witness order");
    sub->callback([&chosen, cmd = e.cmd] { chosen = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every usage error is invalid input.
    return app.exit(e) == 0 ? zygmund::kExitOk : zygmund::kExitInvalid;
  }

  zygmund::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = zygmund::load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return zygmund::kExitInvalid;
  }
  if (out_dir) cfg.output_dir = *out_dir;
  if (seed) cfg.seed = *seed;
  if (band_limit) cfg.band_limit = *band_limit;

  return zygmund::dispatch(*chosen, cfg, n, std::cout, std::cerr);
}
