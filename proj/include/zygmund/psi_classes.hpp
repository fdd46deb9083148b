#pragma once

// Decay functions psi(t) defining convolution classes, the composite
// g_{s,q'}(t) = psi(t) t^{s + 1/q'}, and membership tests for the structural
// classes Theta_rho, B, A+, A-, Z.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zygmund {

enum class PsiFamily {
  Power,        // t^{-r}
  PowerLog,     // ln^alpha(t + c) / t^r
  PowerInvLog,  // 1 / (t^r ln^alpha(t + c))
  PowerLogLog,  // (ln ln(t + c))^alpha / t^r
  Tabulated,    // values at t = 1..K, power-law continuation beyond K
};

std::string to_string(PsiFamily family);

/// A positive nonincreasing function psi on [1, inf).
///
/// Instances are validated on construction and immutable afterwards.
/// Tabulated data is interpolated log-linearly between integer nodes and
/// continued past the last node as psi(K) (K / t)^p with the declared decay
/// exponent p.
class PsiSpec {
 public:
  static PsiSpec power(double r);
  static PsiSpec power_log(double r, double alpha, double c);
  static PsiSpec power_inv_log(double r, double alpha, double c);
  static PsiSpec power_log_log(double r, double alpha, double c);
  static PsiSpec tabulated(std::vector<double> values, double decay_exponent);

  PsiFamily family() const noexcept { return family_; }
  bool analytic() const noexcept { return family_ != PsiFamily::Tabulated; }
  bool has_log_factor() const noexcept {
    return family_ == PsiFamily::PowerLog || family_ == PsiFamily::PowerInvLog ||
           family_ == PsiFamily::PowerLogLog;
  }

  /// Power exponent r; for tabulated data, the declared decay exponent.
  double r() const noexcept { return r_; }
  double alpha() const noexcept { return alpha_; }
  double c() const noexcept { return c_; }
  std::span<const double> table() const noexcept { return table_; }

  /// psi(t); throws DomainError for t < 1 (or NaN).
  double operator()(double t) const;

  std::string describe() const;

 private:
  PsiSpec(PsiFamily family, double r, double alpha, double c,
          std::vector<double> table);
  double eval_unchecked(double t) const;
  void check_monotone() const;

  PsiFamily family_;
  double r_;
  double alpha_;
  double c_;
  std::vector<double> table_;
};

/// Zygmund exponent s, target metric exponent q and shift beta.
class MethodParams {
 public:
  MethodParams(double s, double q, double beta = 0.0);

  double s() const noexcept { return s_; }
  double q() const noexcept { return q_; }
  double q_prime() const noexcept { return q_prime_; }
  double beta() const noexcept { return beta_; }

 private:
  double s_;
  double q_;
  double q_prime_;
  double beta_;
};

enum class RegimeTag { APlus, ZygmundSlow, AMinus, Indeterminate };

std::string to_string(RegimeTag tag);

struct RegimeClass {
  RegimeTag tag = RegimeTag::Indeterminate;
  /// epsilon certifying g t^{-eps} increasing (A+) or g t^{eps} decreasing (A-).
  std::optional<double> witness_epsilon;
};

enum class Verdict { True, False, Indeterminate };

std::string to_string(Verdict v);

struct ThetaResult {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<double> alpha;  // exponent with t^alpha psi(t) almost decreasing
  std::optional<double> K;      // almost-decrease constant measured on a grid
};

struct BResult {
  bool bounded = false;
  double K = 0.0;  // sup of psi(t) / psi(2t) over the sampled grid
};

enum class Convexity { ConvexUp, ConvexDown, Neither };

std::string to_string(Convexity c);

/// Exhaustive parameter checks for a family against Theta_rho, including the
/// lower bound on c for the log-perturbed families. Throws ParameterError.
void validate_for_rho(const PsiSpec& spec, double rho);

double eval_psi(const PsiSpec& spec, double t);

/// g_{s,q'}(t) = psi(t) t^{s + 1/q'}.
double eval_g(const PsiSpec& spec, const MethodParams& m, double t);

/// Net power exponent (s + 1/q') - r of g for analytic families.
double net_exponent(const PsiSpec& spec, const MethodParams& m);

RegimeClass classify_regime(const PsiSpec& spec, const MethodParams& m);

ThetaResult check_theta(const PsiSpec& spec, double rho);

BResult check_B(const PsiSpec& spec, double t_max);

Convexity check_recip_convexity(const PsiSpec& spec, int grid);

/// `count` points spaced geometrically on [lo, hi], endpoints included.
std::vector<double> geometric_grid(double lo, double hi, int count);

}  // namespace zygmund
