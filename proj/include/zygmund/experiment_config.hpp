#pragma once

// Experiment configuration: a flat "key = value" text file with dotted keys.
//
//   psi.family   = power | power_log | power_inv_log | power_log_log
//   psi.r, psi.alpha, psi.c
//   method.s, method.q, method.beta
//   n_grid       = 8, 16, 32
//   band_limit   = 4
//   output_dir   = out
//   seed         = 1
//   table.r_list = 0.75, 1.5, 2.5
//   witness.n    = 8
//
// '#' starts a comment. Unknown keys are errors. Keys left out keep the
// defaults below.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zygmund/errors.hpp"
#include "zygmund/psi_classes.hpp"

namespace zygmund {

class ConfigError : public ParameterError {
 public:
  ConfigError(std::string field, const std::string& message, int line = 0);

  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  std::string message_;
  int line_;
};

struct ExperimentConfig {
  std::string psi_family = "power";
  double psi_r = 1.0;
  double psi_alpha = 1.0;
  double psi_c = 1.0;
  double s = 1.0;
  double q = 2.0;
  double beta = 0.0;
  std::vector<int> n_grid{8, 16, 32, 64, 128, 256};
  double band_limit = 4.0;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  std::vector<double> r_list{0.75, 1.5, 2.5};
  std::optional<int> witness_n;

  PsiSpec psi() const;
  MethodParams method() const;
};

/// Parses and validates; throws ConfigError naming the offending field
/// (and line, where one exists).
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// Field-level validation shared by the parser and command-line overrides.
void validate_config(const ExperimentConfig& cfg);

}  // namespace zygmund
