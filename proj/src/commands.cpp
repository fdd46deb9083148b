#include "zygmund/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>

#include "zygmund/csv_io.hpp"
#include "zygmund/errors.hpp"
#include "zygmund/extremal_witness.hpp"
#include "zygmund/lq_norms.hpp"
#include "zygmund/rate_laws.hpp"
#include "zygmund/trig_poly.hpp"

namespace zygmund {

namespace {

constexpr int kRandomDensities = 6;

std::ofstream open_output(const ExperimentConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.output_dir);
  const auto path = std::filesystem::path(cfg.output_dir) / name;
  std::ofstream os(path);
  if (!os) throw ConfigError("output_dir", "cannot write " + path.string());
  return os;
}

void write_poly_file(const ExperimentConfig& cfg, const std::string& name,
                     const TrigPoly& p) {
  auto os = open_output(cfg, name);
  write_trig_poly_csv(os, p);
}

void write_plot_file(const ExperimentConfig& cfg, const std::string& name,
                     const std::vector<int>& n, const std::vector<double>& v) {
  auto os = open_output(cfg, name);
  write_plot_data(os, n, v);
}

// Checks that need the full (psi, q') pair, before any computation.
void validate_class(const ExperimentConfig& cfg) {
  try {
    validate_for_rho(cfg.psi(), cfg.method().q_prime());
  } catch (const ConfigError&) {
    throw;
  } catch (const ParameterError& e) {
    throw ConfigError("psi", e.what());
  }
}

std::string band_line(bool ok, double spread, const std::vector<int>& n) {
  std::string line = ok ? "BANDED within " : "NOT BANDED: spread ";
  line += format_double(spread);
  line += " over n in [" + std::to_string(n.front()) + ", " +
          std::to_string(n.back()) + "]";
  return line;
}

// Zero-mean density of degree <= 2n with ||phi||_1 = 1.
TrigPoly random_density(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> degree_dist(1, 2 * n);
  std::normal_distribution<double> coeff(0.0, 1.0);
  TrigPoly phi;
  phi.terms.resize(static_cast<std::size_t>(degree_dist(rng)));
  for (std::size_t k = 0; k < phi.terms.size(); ++k) {
    const double scale = 1.0 / static_cast<double>(k + 1);
    phi.terms[k] = {scale * coeff(rng), scale * coeff(rng)};
  }
  return (1.0 / l1_norm(phi)) * phi;
}

struct MajorantRow {
  int n = 0;
  double majorant = 0.0;
  double witness_deviation = 0.0;
  double max_random_deviation = 0.0;
  int violations = 0;
};

MajorantRow majorant_check(const ExperimentConfig& cfg, std::mt19937_64& rng,
                           int n, double witness_deviation) {
  const PsiSpec psi = cfg.psi();
  const MethodParams m = cfg.method();
  MajorantRow row;
  row.n = n;
  row.majorant = upper_bound_estimate(psi, m, n).value;
  row.witness_deviation = witness_deviation;
  const double limit = row.majorant * (1 + 1e-9);
  if (witness_deviation > limit) ++row.violations;
  for (int i = 0; i < kRandomDensities; ++i) {
    const TrigPoly phi = random_density(rng, n);
    const KernelSpec kernel{psi, m.beta(), std::max(phi.degree(), n)};
    const double dev =
        lq_norm(class_deviation_coeffs(phi, kernel, n, m.s()), {m.q()});
    row.max_random_deviation = std::max(row.max_random_deviation, dev);
    if (dev > limit) ++row.violations;
  }
  return row;
}

}  // namespace

int run_classify(const ExperimentConfig& cfg, std::ostream& out) {
  const PsiSpec psi = cfg.psi();
  const MethodParams m = cfg.method();
  const RegimeClass regime = classify_regime(psi, m);
  const ThetaResult theta = check_theta(psi, m.q_prime());
  const BResult b = check_B(psi, 1e6);
  const Convexity conv = check_recip_convexity(psi, 1000);

  out << "psi=" << psi.describe() << '\n';
  out << "regime=" << to_string(regime.tag) << ", theta(q'="
      << format_double(m.q_prime()) << ")=" << to_string(theta.verdict);
  if (theta.alpha)
    out << " (alpha=" << format_double(*theta.alpha)
        << ", K=" << format_double(theta.K.value_or(0.0)) << ")";
  out << '\n';
  if (regime.witness_epsilon)
    out << "epsilon=" << format_double(*regime.witness_epsilon) << '\n';
  out << "B=" << (b.bounded ? "true" : "false") << " (K=" << format_double(b.K)
      << ")\n";
  out << "convexity(1/psi)=" << to_string(conv) << '\n';
  return kExitOk;
}

int run_rate_check(const ExperimentConfig& cfg, std::ostream& out) {
  validate_class(cfg);
  const PsiSpec psi = cfg.psi();
  const MethodParams m = cfg.method();
  const RateReport report = ratio_experiment(psi, m, cfg.n_grid, cfg.band_limit);

  {
    auto os = open_output(cfg, "rate_report.csv");
    write_rate_report_csv(os, report);
  }
  write_plot_file(cfg, "deviation.dat", report.n_grid, report.deviations);
  write_plot_file(cfg, "lower_bound.dat", report.n_grid, report.lower_bounds);
  write_plot_file(cfg, "upper_rate.dat", report.n_grid, report.upper_rates);

  std::mt19937_64 rng(cfg.seed);
  int violations = 0;
  {
    auto os = open_output(cfg, "majorant.csv");
    os << "n,majorant,witness_deviation,max_random_deviation,violations\n";
    for (std::size_t i = 0; i < report.n_grid.size(); ++i) {
      const MajorantRow row =
          majorant_check(cfg, rng, report.n_grid[i], report.deviations[i]);
      violations += row.violations;
      os << row.n << ',' << format_double(row.majorant) << ','
         << format_double(row.witness_deviation) << ','
         << format_double(row.max_random_deviation) << ',' << row.violations
         << '\n';
    }
  }

  out << "regime=" << to_string(report.regime.tag) << '\n';
  out << "deviation/rate in [" << format_double(report.ratio_band.first) << ", "
      << format_double(report.ratio_band.second) << "], lower/rate in ["
      << format_double(report.lower_band.first) << ", "
      << format_double(report.lower_band.second) << "]\n";
  out << "slope=" << format_double(report.slope) << '\n';
  out << "majorant violations=" << violations << '\n';
  const double spread = std::max(report.ratio_spread(), report.lower_spread());
  const bool ok = report.verdict && violations == 0;
  out << band_line(ok, spread, report.n_grid) << '\n';
  return ok ? kExitOk : kExitVerdict;
}

int run_witness(const ExperimentConfig& cfg, int n, std::ostream& out) {
  if (n < 2) throw ConfigError("witness.n", "must be >= 2");
  const WitnessResult w = build_witness({cfg.psi(), cfg.method(), n});
  {
    auto os = open_output(cfg, "witness.csv");
    write_witness_header(os);
    write_witness_row(os, n, w);
  }
  write_poly_file(cfg, "phi.csv", w.phi);
  write_poly_file(cfg, "f.csv", w.f);
  write_poly_file(cfg, "dual.csv", w.dual);

  write_witness_header(out);
  write_witness_row(out, n, w);
  const bool dominated = w.lower_bound <= w.measured_deviation;
  out << (dominated ? "lower_bound <= deviation" : "HOELDER VIOLATION") << '\n';
  return dominated ? kExitOk : kExitVerdict;
}

int run_table_vnad(const ExperimentConfig& cfg, std::ostream& out) {
  if (cfg.r_list.empty()) throw ConfigError("table.r_list", "must not be empty");
  const double s = cfg.s;
  const double q = cfg.q;
  auto os = open_output(cfg, "table_vnad.csv");
  os << "r,case,exponent,band_min,band_max,spread,slope,status\n";
  const auto cell = [&out](const std::string& text, int width) {
    out << std::left << std::setw(width) << text;
  };
  cell("r", 8), cell("case", 10), cell("exponent", 10), cell("band", 44);
  cell("slope", 22), out << "status\n";

  bool all_ok = true;
  for (double r : cfg.r_list) {
    int which = 0;
    try {
      which = weyl_nagy_case(r, s, q);
    } catch (const ParameterError&) {
      all_ok = false;
      os << format_double(r) << ",rejected,,,,,,requires r>1-1/q\n";
      cell(format_double(r), 8);
      out << "rejected: requires r>1-1/q\n";
      continue;
    }
    const PsiSpec psi = PsiSpec::power(r);
    const MethodParams m(s, q, cfg.beta);
    std::vector<double> deviations;
    std::vector<double> rates;
    for (int n : cfg.n_grid) {
      deviations.push_back(build_witness({psi, m, n}).measured_deviation);
      rates.push_back(weyl_nagy_rate(r, s, q, n));
    }
    const auto band = ratio_band(deviations, rates);
    const double spread = band.second / band.first;
    const double slope = loglog_slope(cfg.n_grid, deviations);
    // Power part of the rate; case 2 adds a (ln n)^{1/q} factor.
    const double exponent = which == 1 ? -(r - 1 + 1 / q) : -s;
    bool ok = spread <= cfg.band_limit;
    if (which == 1) ok = ok && std::abs(slope - exponent) < 0.1;
    all_ok = all_ok && ok;

    const std::string label = "case" + std::to_string(which);
    os << format_double(r) << ',' << label << ',' << format_double(exponent)
       << ',' << format_double(band.first) << ',' << format_double(band.second)
       << ',' << format_double(spread) << ',' << format_double(slope) << ','
       << (ok ? "pass" : "fail") << '\n';
    cell(format_double(r), 8), cell(label, 10), cell(format_double(exponent), 10);
    cell("[" + format_double(band.first) + ", " + format_double(band.second) + "]",
         44);
    cell(format_double(slope), 22), out << (ok ? "pass" : "fail") << '\n';
  }
  return all_ok ? kExitOk : kExitVerdict;
}

int run_best_approx(const ExperimentConfig& cfg, std::ostream& out) {
  validate_class(cfg);
  const RateReport report = best_vs_method_experiment(
      cfg.psi(), cfg.method(), cfg.n_grid, cfg.band_limit);
  {
    auto os = open_output(cfg, "best_approx.csv");
    os << "n,best_approx,deviation,rate,best_ratio,deviation_ratio\n";
    for (std::size_t i = 0; i < report.n_grid.size(); ++i) {
      os << report.n_grid[i] << ',' << format_double(report.lower_bounds[i])
         << ',' << format_double(report.deviations[i]) << ','
         << format_double(report.upper_rates[i]) << ','
         << format_double(report.lower_bounds[i] / report.upper_rates[i]) << ','
         << format_double(report.deviations[i] / report.upper_rates[i]) << '\n';
    }
  }
  out << "E_n <= deviation: " << (report.dominated ? "yes" : "NO") << '\n';
  out << "E_n/rate in [" << format_double(report.lower_band.first) << ", "
      << format_double(report.lower_band.second) << "], deviation/rate in ["
      << format_double(report.ratio_band.first) << ", "
      << format_double(report.ratio_band.second) << "]\n";
  const double spread = std::max(report.ratio_spread(), report.lower_spread());
  out << band_line(report.verdict, spread, report.n_grid) << '\n';
  return report.verdict ? kExitOk : kExitVerdict;
}

int dispatch(Command cmd, const ExperimentConfig& cfg, std::optional<int> n,
             std::ostream& out, std::ostream& err) {
  try {
    validate_config(cfg);
    switch (cmd) {
      case Command::Classify: return run_classify(cfg, out);
      case Command::RateCheck: return run_rate_check(cfg, out);
      case Command::Witness: {
        const int order = n ? *n : cfg.witness_n.value_or(0);
        if (order == 0)
          throw ConfigError("witness.n", "set --n or witness.n in the config");
        return run_witness(cfg, order, out);
      }
      case Command::TableVnad: return run_table_vnad(cfg, out);
      case Command::BestApprox: return run_best_approx(cfg, out);
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kExitVerdict;
  }
  return kExitVerdict;
}

}  // namespace zygmund
