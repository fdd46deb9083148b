#include "zygmund/rate_laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "zygmund/errors.hpp"
#include "zygmund/extremal_witness.hpp"
#include "zygmund/lq_norms.hpp"
#include "zygmund/trig_poly.hpp"

namespace zygmund {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundaryTol = 1e-12;

void check_increasing(const std::vector<int>& n_grid, int lo) {
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < lo)
      throw ParameterError("n grid entries must be >= " + std::to_string(lo));
    if (i > 0 && n_grid[i] <= n_grid[i - 1])
      throw ParameterError("n grid must be strictly increasing");
  }
}

// int_1^n g(t)^q / t dt.
double slow_regime_integral(const PsiSpec& spec, const MethodParams& m, int n) {
  const double L = std::log(static_cast<double>(n));
  if (spec.family() == PsiFamily::Power) {
    // g(t) = t^e with |e| <= 1e-12.
    const double qe = m.q() * net_exponent(spec, m);
    return qe == 0.0 ? L : std::expm1(qe * L) / qe;
  }
  auto integrand = [&](double u) {
    return std::pow(eval_g(spec, m, std::exp(u)), m.q());
  };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, L, 15, 1e-8);
}

TrigPoly shifted_kernel_block(const PsiSpec& spec, double beta, int from,
                              int to, double extra_power) {
  const PhaseShift ps = phase_shift(beta);
  TrigPoly p;
  p.terms.resize(static_cast<std::size_t>(std::max(to, 0)));
  for (int k = from; k <= to; ++k) {
    const double amp = spec(k) * std::pow(k, extra_power);
    p.terms[static_cast<std::size_t>(k - 1)] = {amp * ps.cos, amp * ps.sin};
  }
  return p;
}

double tail_sum_or_inf(const PsiSpec& spec, int N, double power) {
  try {
    return psi_tail_sum(spec, N, power);
  } catch (const ConvergenceError&) {
    return kInf;
  }
}

// Rigorous bound on || sum_{k>N} psi(k) cos(kt - theta) ||_q.
double remainder_bound(const PsiSpec& spec, double q, int N) {
  const double two_pi = 2 * kPi;
  double best = std::pow(two_pi, 1 / q) * tail_sum_or_inf(spec, N, 1.0);
  if (q <= 2) {
    // ||F||_q <= (2 pi)^{1/q - 1/2} ||F||_2.
    best = std::min(best, std::pow(two_pi, 1 / q - 0.5) *
                              std::sqrt(kPi * tail_sum_or_inf(spec, N, 2.0)));
  } else {
    // Hausdorff-Young with coefficients psi(k)/2 at +-k.
    const double qp = q / (q - 1);
    best = std::min(best, std::pow(two_pi, 1 / q) *
                              std::pow(2 * std::pow(0.5, qp) *
                                           tail_sum_or_inf(spec, N, qp),
                                       1 / qp));
  }
  return best;
}

}  // namespace

double theoretical_rate(const PsiSpec& spec, const MethodParams& m,
                        const RegimeClass& regime, int n) {
  if (n < 2) throw ParameterError("theoretical rate needs n >= 2");
  const RegimeClass actual = classify_regime(spec, m);
  if (actual.tag != regime.tag || regime.tag == RegimeTag::Indeterminate)
    throw PreconditionError("regime mismatch: requested " +
                            to_string(regime.tag) + ", classified " +
                            to_string(actual.tag));
  const double nd = static_cast<double>(n);
  switch (regime.tag) {
    case RegimeTag::APlus:
      return spec(nd) * std::pow(nd, 1 - 1 / m.q());
    case RegimeTag::ZygmundSlow:
      return std::pow(nd, -m.s()) *
             std::pow(slow_regime_integral(spec, m, n), 1 / m.q());
    case RegimeTag::AMinus:
      return std::pow(nd, -m.s());
    case RegimeTag::Indeterminate:
      break;
  }
  throw PreconditionError("no rate for an indeterminate regime");
}

int weyl_nagy_case(double r, double s, double q) {
  if (!(q > 1) || !(s > 0)) throw ParameterError("need s > 0 and q > 1");
  if (!(r > 1 - 1 / q))
    throw ParameterError("Weyl-Nagy rate requires r>1-1/q");
  const double critical = s + 1 - 1 / q;
  if (std::abs(r - critical) <= kBoundaryTol) return 2;
  return r < critical ? 1 : 3;
}

double weyl_nagy_rate(double r, double s, double q, int n) {
  const int which = weyl_nagy_case(r, s, q);
  if (n < 2) throw ParameterError("Weyl-Nagy rate needs n >= 2");
  const double nd = static_cast<double>(n);
  switch (which) {
    case 1: return std::pow(nd, -(r - 1 + 1 / q));
    case 2: return std::pow(nd, -s) * std::pow(std::log(nd), 1 / q);
    default: return std::pow(nd, -s);
  }
}

UpperBoundEstimate upper_bound_estimate(const PsiSpec& spec,
                                        const MethodParams& m, int n,
                                        int oversample) {
  if (n < 1) throw ParameterError("n must be >= 1");
  if (oversample < 1) throw ParameterError("oversample must be >= 1");
  const NormRequest req{m.q()};
  const int N0 = oversample * std::max(4 * n, 64);
  // Exact L_q norms of very long tails are only cheap for even q.
  const bool even_q = m.q() == std::floor(m.q()) && std::fmod(m.q(), 2.0) == 0.0;
  const int kMaxN = even_q ? 1 << 16 : 1 << 10;

  UpperBoundEstimate est;
  est.head_norm = n > 1 ? lq_norm(shifted_kernel_block(spec, m.beta(), 1,
                                                       n - 1, m.s()),
                                  req)
                        : 0.0;
  const double head = std::pow(static_cast<double>(n), -m.s()) * est.head_norm;
  est.tail_norm =
      lq_norm(shifted_kernel_block(spec, m.beta(), n, N0, 0.0), req);

  // Grow N until the remainder bound is negligible or the cap is reached.
  int N = N0;
  double R = remainder_bound(spec, m.q(), N);
  while (R > 1e-3 * (head + est.tail_norm) && 2 * N <= std::max(kMaxN, N0)) {
    N *= 2;
    R = remainder_bound(spec, m.q(), N);
  }
  if (!std::isfinite(R))
    throw ConvergenceError("kernel tail bound does not converge for " +
                           spec.describe());
  if (N != N0)
    est.tail_norm =
        lq_norm(shifted_kernel_block(spec, m.beta(), n, N, 0.0), req);
  est.N = N;
  est.remainder = R;
  est.value = (head + est.tail_norm + R) / kPi;
  return est;
}

double loglog_slope(const std::vector<int>& x, const std::vector<double>& y) {
  const auto count = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(static_cast<double>(x[i]));
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

std::pair<double, double> ratio_band(const std::vector<double>& num,
                                     const std::vector<double>& den) {
  double lo = kInf, hi = -kInf;
  for (std::size_t i = 0; i < num.size(); ++i) {
    const double r = num[i] / den[i];
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

RateReport ratio_experiment(const PsiSpec& spec, const MethodParams& m,
                            const std::vector<int>& n_grid, double band_limit) {
  if (n_grid.size() < 5)
    throw ParameterError("ratio experiment needs at least 5 grid points");
  check_increasing(n_grid, 4);
  if (n_grid.back() > 1024) throw ParameterError("n grid must lie in [4, 1024]");
  if (!(band_limit >= 1)) throw ParameterError("band limit must be >= 1");

  RateReport report;
  report.regime = classify_regime(spec, m);
  report.n_grid = n_grid;
  report.band_limit = band_limit;
  for (int n : n_grid) {
    const WitnessResult w = build_witness({spec, m, n});
    report.deviations.push_back(w.measured_deviation);
    report.lower_bounds.push_back(w.lower_bound);
    report.upper_rates.push_back(theoretical_rate(spec, m, report.regime, n));
    report.dominated = report.dominated && w.lower_bound <= w.measured_deviation;
  }
  report.ratio_band = ratio_band(report.deviations, report.upper_rates);
  report.lower_band = ratio_band(report.lower_bounds, report.upper_rates);
  report.slope = loglog_slope(n_grid, report.deviations);
  report.verdict = report.dominated && report.ratio_spread() <= band_limit &&
                   report.lower_spread() <= band_limit;
  return report;
}

RateReport best_vs_method_experiment(const PsiSpec& spec, const MethodParams& m,
                                     const std::vector<int>& n_grid,
                                     double band_limit) {
  if (n_grid.empty()) throw ParameterError("n grid is empty");
  check_increasing(n_grid, 2);
  const RegimeClass regime = classify_regime(spec, m);
  if (regime.tag != RegimeTag::APlus)
    throw PreconditionError("best-vs-method comparison needs the APlus regime");
  if (check_theta(spec, m.q_prime()).verdict != Verdict::True)
    throw PreconditionError("best-vs-method comparison needs psi in Theta_q'");
  if (check_recip_convexity(spec, 1000) == Convexity::Neither)
    throw PreconditionError("best-vs-method comparison needs 1/psi convex "
                            "upward or downward");

  RateReport report;
  report.regime = regime;
  report.n_grid = n_grid;
  report.band_limit = band_limit;
  for (int n : n_grid) {
    const WitnessResult w = build_witness({spec, m, n});
    const BestApproxResult best = best_approx(w.f, n, {m.q()});
    report.deviations.push_back(w.measured_deviation);
    report.lower_bounds.push_back(best.value);
    report.upper_rates.push_back(theoretical_rate(spec, m, regime, n));
    report.dominated = report.dominated && best.value <= w.measured_deviation;
  }
  report.ratio_band = ratio_band(report.deviations, report.upper_rates);
  report.lower_band = ratio_band(report.lower_bounds, report.upper_rates);
  report.slope = loglog_slope(n_grid, report.deviations);
  report.verdict = report.dominated && report.ratio_spread() <= band_limit &&
                   report.lower_spread() <= band_limit;
  return report;
}

}  // namespace zygmund
