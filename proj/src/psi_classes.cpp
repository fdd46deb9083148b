#include "zygmund/psi_classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "zygmund/errors.hpp"

namespace zygmund {

namespace {

constexpr double kBoundaryTol = 1e-12;

// Sup over i < j of h_j / h_i on the sampled values.
double almost_decrease_constant(const std::vector<double>& h) {
  double running_min = h.front();
  double K = 1.0;
  for (double v : h) {
    running_min = std::min(running_min, v);
    K = std::max(K, v / running_min);
  }
  return K;
}

}  // namespace

std::string to_string(PsiFamily family) {
  switch (family) {
    case PsiFamily::Power: return "power";
    case PsiFamily::PowerLog: return "power_log";
    case PsiFamily::PowerInvLog: return "power_inv_log";
    case PsiFamily::PowerLogLog: return "power_log_log";
    case PsiFamily::Tabulated: return "tabulated";
  }
  return "?";
}

std::string to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::APlus: return "APlus";
    case RegimeTag::ZygmundSlow: return "ZygmundSlow";
    case RegimeTag::AMinus: return "AMinus";
    case RegimeTag::Indeterminate: return "Indeterminate";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

std::string to_string(Convexity c) {
  switch (c) {
    case Convexity::ConvexUp: return "ConvexUp";
    case Convexity::ConvexDown: return "ConvexDown";
    case Convexity::Neither: return "Neither";
  }
  return "?";
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] =
        lo * std::exp(ratio * static_cast<double>(i) / (count - 1));
  out.back() = hi;
  return out;
}

PsiSpec::PsiSpec(PsiFamily family, double r, double alpha, double c,
                 std::vector<double> table)
    : family_(family), r_(r), alpha_(alpha), c_(c), table_(std::move(table)) {}

PsiSpec PsiSpec::power(double r) {
  if (!(r > 0)) throw ParameterError("power family requires r > 0");
  return PsiSpec(PsiFamily::Power, r, 0.0, 0.0, {});
}

PsiSpec PsiSpec::power_log(double r, double alpha, double c) {
  if (!(r > 0) || !(alpha > 0) || !(c > 0))
    throw ParameterError("power_log family requires r > 0, alpha > 0, c > 0");
  PsiSpec spec(PsiFamily::PowerLog, r, alpha, c, {});
  spec.check_monotone();
  return spec;
}

PsiSpec PsiSpec::power_inv_log(double r, double alpha, double c) {
  if (!(r > 0) || !(alpha > 0) || !(c > 0))
    throw ParameterError(
        "power_inv_log family requires r > 0, alpha > 0, c > 0");
  return PsiSpec(PsiFamily::PowerInvLog, r, alpha, c, {});
}

PsiSpec PsiSpec::power_log_log(double r, double alpha, double c) {
  if (!(r > 0) || !(alpha > 0) || !(c > std::numbers::e - 1))
    throw ParameterError(
        "power_log_log family requires r > 0, alpha > 0, c > e - 1");
  PsiSpec spec(PsiFamily::PowerLogLog, r, alpha, c, {});
  spec.check_monotone();
  return spec;
}

PsiSpec PsiSpec::tabulated(std::vector<double> values, double decay_exponent) {
  if (values.empty()) throw ParameterError("tabulated psi needs values");
  if (!(decay_exponent > 0))
    throw ParameterError("tabulated psi requires a positive decay exponent");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0) || !std::isfinite(values[i]))
      throw ParameterError("tabulated psi values must be positive and finite");
    if (i > 0 && values[i] > values[i - 1])
      throw ParameterError("tabulated psi values must be nonincreasing");
  }
  return PsiSpec(PsiFamily::Tabulated, decay_exponent, 0.0, 0.0,
                 std::move(values));
}

void PsiSpec::check_monotone() const {
  const auto grid = geometric_grid(1.0, 1e12, 2000);
  double prev = eval_unchecked(grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = eval_unchecked(grid[i]);
    if (v > prev * (1 + 1e-13))
      throw ParameterError(describe() + " is not nonincreasing on [1, inf)");
    prev = v;
  }
}

double PsiSpec::eval_unchecked(double t) const {
  switch (family_) {
    case PsiFamily::Power:
      return std::pow(t, -r_);
    case PsiFamily::PowerLog:
      return std::pow(std::log(t + c_), alpha_) * std::pow(t, -r_);
    case PsiFamily::PowerInvLog:
      return std::pow(t, -r_) / std::pow(std::log(t + c_), alpha_);
    case PsiFamily::PowerLogLog:
      return std::pow(std::log(std::log(t + c_)), alpha_) * std::pow(t, -r_);
    case PsiFamily::Tabulated: {
      const auto K = static_cast<double>(table_.size());
      if (t >= K) return table_.back() * std::pow(K / t, r_);
      const double fl = std::floor(t);
      const auto k = static_cast<std::size_t>(fl);  // node t = k sits at k-1
      const double w = t - fl;
      if (w == 0.0) return table_[k - 1];
      return std::exp((1 - w) * std::log(table_[k - 1]) +
                      w * std::log(table_[k]));
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double PsiSpec::operator()(double t) const {
  if (!(t >= 1.0)) throw DomainError("psi is defined for t >= 1");
  return eval_unchecked(t);
}

std::string PsiSpec::describe() const {
  std::ostringstream os;
  os << to_string(family_) << "(r=" << r_;
  if (has_log_factor()) os << ", alpha=" << alpha_ << ", c=" << c_;
  if (family_ == PsiFamily::Tabulated) os << ", nodes=" << table_.size();
  os << ")";
  return os.str();
}

MethodParams::MethodParams(double s, double q, double beta)
    : s_(s), q_(q), q_prime_(q / (q - 1)), beta_(beta) {
  if (!(s > 0)) throw ParameterError("s must be positive");
  if (!(q > 1) || !std::isfinite(q))
    throw ParameterError("q must lie in (1, inf)");
  if (!std::isfinite(beta)) throw ParameterError("beta must be finite");
}

void validate_for_rho(const PsiSpec& spec, double rho) {
  if (!(rho >= 1)) throw ParameterError("rho must be >= 1");
  if (spec.family() == PsiFamily::Tabulated) return;
  const double gap = spec.r() - 1.0 / rho;
  if (!(gap > 0))
    throw ParameterError(spec.describe() + " requires r > 1/rho = " +
                         std::to_string(1.0 / rho));
  if (spec.family() == PsiFamily::PowerLog ||
      spec.family() == PsiFamily::PowerLogLog) {
    const double c_min = std::exp(2 * spec.alpha() / gap) - 1;
    if (!(spec.c() > c_min))
      throw ParameterError(spec.describe() + " requires c > " +
                           std::to_string(c_min));
  }
}

double eval_psi(const PsiSpec& spec, double t) { return spec(t); }

double eval_g(const PsiSpec& spec, const MethodParams& m, double t) {
  return spec(t) * std::pow(t, m.s() + 1.0 / m.q_prime());
}

double net_exponent(const PsiSpec& spec, const MethodParams& m) {
  return m.s() + 1.0 / m.q_prime() - spec.r();
}

RegimeClass classify_regime(const PsiSpec& spec, const MethodParams& m) {
  if (spec.analytic()) {
    // Log factors are o(t^delta) for every delta > 0, so only the power
    // exponent decides; at e = 0 they keep g slowly oscillating.
    const double e = net_exponent(spec, m);
    if (std::abs(e) <= kBoundaryTol) return {RegimeTag::ZygmundSlow, {}};
    if (e > 0) return {RegimeTag::APlus, e / 2};
    return {RegimeTag::AMinus, -e / 2};
  }

  const double t_top =
      std::max(1e6, 64.0 * static_cast<double>(spec.table().size()));
  const auto grid = geometric_grid(1.0, t_top, 241);
  std::vector<double> slopes;
  slopes.reserve(grid.size() - 1);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    slopes.push_back(std::log(eval_g(spec, m, grid[i + 1]) /
                              eval_g(spec, m, grid[i])) /
                     std::log(grid[i + 1] / grid[i]));
  }
  const auto [lo, hi] = std::minmax_element(slopes.begin(), slopes.end());
  constexpr double kMinSlope = 1e-3;
  if (*lo > kMinSlope) return {RegimeTag::APlus, *lo / 2};
  if (*hi < -kMinSlope) return {RegimeTag::AMinus, -*hi / 2};
  const auto upper = slopes.begin() + static_cast<std::ptrdiff_t>(slopes.size() / 2);
  if (std::all_of(upper, slopes.end(),
                  [](double v) { return std::abs(v) < 0.05; }))
    return {RegimeTag::ZygmundSlow, {}};
  return {RegimeTag::Indeterminate, {}};
}

ThetaResult check_theta(const PsiSpec& spec, double rho) {
  if (!(rho >= 1)) throw ParameterError("rho must be >= 1");
  const double inv_rho = 1.0 / rho;
  const auto grid = geometric_grid(1.0, 1e8, 400);
  auto measure = [&](double a) {
    std::vector<double> h;
    h.reserve(grid.size());
    for (double t : grid) h.push_back(std::pow(t, a) * spec(t));
    return almost_decrease_constant(h);
  };

  switch (spec.family()) {
    case PsiFamily::Power:
      if (spec.r() > inv_rho) return {Verdict::True, spec.r(), 1.0};
      return {Verdict::False, {}, {}};
    case PsiFamily::PowerInvLog:
      if (spec.r() > inv_rho) return {Verdict::True, spec.r(), measure(spec.r())};
      return {Verdict::False, {}, {}};
    case PsiFamily::PowerLog:
    case PsiFamily::PowerLogLog: {
      if (!(spec.r() > inv_rho)) return {Verdict::False, {}, {}};
      const double a = 0.5 * (spec.r() + inv_rho);
      return {Verdict::True, a, measure(a)};
    }
    case PsiFamily::Tabulated: {
      constexpr double kMaxK = 10.0;
      const double top = spec.r();
      if (top > inv_rho) {
        for (int i = 8; i >= 1; --i) {
          const double a = inv_rho + (top - inv_rho) * i / 8.0;
          const double K = measure(a);
          if (K <= kMaxK) return {Verdict::True, a, K};
        }
      }
      return {Verdict::Indeterminate, {}, {}};
    }
  }
  return {};
}

BResult check_B(const PsiSpec& spec, double t_max) {
  if (!(t_max >= 2)) throw ParameterError("check_B requires tMax >= 2");
  double K = 0.0;
  for (double t : geometric_grid(1.0, t_max, 512)) {
    const double ratio = spec(t) / spec(2 * t);
    if (!std::isfinite(ratio)) return {false, std::numeric_limits<double>::infinity()};
    K = std::max(K, ratio);
  }
  if (spec.analytic()) {
    if (spec.family() == PsiFamily::Power) K = std::pow(2.0, spec.r());
    return {true, K};
  }
  // Finite data: a doubling ratio far above the declared power-law value
  // 2^p is read as unbounded.
  return {K <= 16.0 * std::pow(2.0, spec.r()), K};
}

Convexity check_recip_convexity(const PsiSpec& spec, int grid) {
  if (grid < 3) throw ParameterError("convexity grid needs at least 3 points");
  std::vector<double> h;
  h.reserve(static_cast<std::size_t>(grid) + 1);
  for (int i = 0; i <= grid; ++i) h.push_back(1.0 / spec(1.0 + i));
  const double scale = *std::max_element(h.begin(), h.end());
  const double tol = 1e-12 * scale;
  bool nonneg = true, nonpos = true;
  for (std::size_t i = 1; i + 1 < h.size(); ++i) {
    const double d2 = h[i + 1] - 2 * h[i] + h[i - 1];
    if (d2 < -tol) nonneg = false;
    if (d2 > tol) nonpos = false;
  }
  if (nonneg) return Convexity::ConvexDown;
  if (nonpos) return Convexity::ConvexUp;
  return Convexity::Neither;
}

}  // namespace zygmund
