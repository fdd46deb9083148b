#pragma once

// Subcommands of the command-line runner. Each returns the process exit
// status: 0 when every verdict passes, 1 when a verdict fails, 2 when the
// configuration is rejected before any computation.

#include <iosfwd>
#include <optional>

#include "zygmund/experiment_config.hpp"

namespace zygmund {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitInvalid = 2;

enum class Command { Classify, RateCheck, Witness, TableVnad, BestApprox };

/// Regime, Theta_{q'}, B and convexity verdicts with their certificates.
int run_classify(const ExperimentConfig& cfg, std::ostream& out);

/// Bounded-ratio check over n_grid plus a majorant check on random
/// densities. Writes rate_report.csv, majorant.csv and deviation.dat,
/// lower_bound.dat, upper_rate.dat under cfg.output_dir.
int run_rate_check(const ExperimentConfig& cfg, std::ostream& out);

/// Witness at order n. Writes witness.csv, phi.csv, f.csv and dual.csv.
int run_witness(const ExperimentConfig& cfg, int n, std::ostream& out);

/// One row per r in cfg.r_list for psi(k) = k^{-r}. Writes table_vnad.csv.
int run_table_vnad(const ExperimentConfig& cfg, std::ostream& out);

/// Best approximation of the witness against its Zygmund deviation.
/// Writes best_approx.csv.
int run_best_approx(const ExperimentConfig& cfg, std::ostream& out);

/// Runs a command, mapping exceptions to exit codes with a diagnostic on err.
int dispatch(Command cmd, const ExperimentConfig& cfg, std::optional<int> n,
             std::ostream& out, std::ostream& err);

}  // namespace zygmund
