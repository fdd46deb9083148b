#pragma once

// Order-exact rates for the Zygmund deviation on L^psi_{beta,1} in L_q and
// the bounded-ratio experiments that test them numerically.

#include <utility>
#include <vector>

#include "zygmund/psi_classes.hpp"

namespace zygmund {

/// Rate for the regime of g_{s,q'}:
///   APlus       psi(n) n^{1 - 1/q}
///   ZygmundSlow n^{-s} (int_1^n g(t)^q / t dt)^{1/q}
///   AMinus      n^{-s}
/// Throws PreconditionError if `regime` is not what classify_regime reports.
double theoretical_rate(const PsiSpec& spec, const MethodParams& m,
                        const RegimeClass& regime, int n);

/// Three-branch rate for psi(k) = k^{-r}: case 1 for r < s + 1 - 1/q,
/// case 2 at equality, case 3 above.
int weyl_nagy_case(double r, double s, double q);
double weyl_nagy_rate(double r, double s, double q, int n);

/// Majorant (1/pi) (n^{-s} ||head||_q + ||tail_N||_q + R_N) of the class
/// deviation, where head = sum_{k<n} psi(k) k^s cos(kt - beta pi/2), tail_N
/// the kernel harmonics n..N and R_N a rigorous bound on the L_q norm of the
/// harmonics beyond N.
struct UpperBoundEstimate {
  double value = 0.0;
  double head_norm = 0.0;
  double tail_norm = 0.0;
  double remainder = 0.0;
  int N = 0;
};

UpperBoundEstimate upper_bound_estimate(const PsiSpec& spec,
                                        const MethodParams& m, int n,
                                        int oversample = 1);

/// Per-n table behind a bounded-ratio check.
struct RateReport {
  RegimeClass regime;
  std::vector<int> n_grid;
  std::vector<double> deviations;
  std::vector<double> upper_rates;
  std::vector<double> lower_bounds;
  std::pair<double, double> ratio_band;  // min / max of deviation / rate
  std::pair<double, double> lower_band;  // min / max of lower / rate
  double band_limit = 0.0;
  double slope = 0.0;  // least-squares slope of log deviation vs log n
  bool dominated = true;  // lower_bounds[i] <= deviations[i] for every i
  bool verdict = false;

  double ratio_spread() const { return ratio_band.second / ratio_band.first; }
  double lower_spread() const { return lower_band.second / lower_band.first; }
};

/// Witness deviations and lower bounds against theoretical_rate over nGrid.
RateReport ratio_experiment(const PsiSpec& spec, const MethodParams& m,
                            const std::vector<int>& n_grid, double band_limit);

/// Best approximation E_n of the witness against its Zygmund deviation, both
/// measured against psi(n) n^{1-1/q}. In the report, lower_bounds hold E_n.
RateReport best_vs_method_experiment(const PsiSpec& spec, const MethodParams& m,
                                     const std::vector<int>& n_grid,
                                     double band_limit);

/// Ordinary least squares slope of log(y) against log(x).
double loglog_slope(const std::vector<int>& x, const std::vector<double>& y);

/// (min, max) of the elementwise quotient num / den.
std::pair<double, double> ratio_band(const std::vector<double>& num,
                                     const std::vector<double>& den);

}  // namespace zygmund
