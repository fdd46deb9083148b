#include "zygmund/extremal_witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zygmund/errors.hpp"
#include "zygmund/sampling.hpp"

namespace zygmund {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kExpansionTol = 1e-10;
constexpr double kPairingTol = 1e-8;

void check_config(const WitnessConfig& cfg) {
  if (cfg.n < 2) throw PreconditionError("witness requires n >= 2");
}

// sum_{k=1}^{n-1} g(k)^q / k.
double g_power_sum(const WitnessConfig& cfg) {
  const double q = cfg.method.q();
  double sum = 0.0;
  for (int k = 1; k < cfg.n; ++k)
    sum += std::pow(eval_g(cfg.psi, cfg.method, k), q) / k;
  return sum;
}

double closed_form_I(const WitnessConfig& cfg, double alpha0) {
  return alpha0 * kPi * std::pow(cfg.n, -cfg.method.s()) * g_power_sum(cfg);
}

TrigPoly deviation_of(const TrigPoly& f, const WitnessConfig& cfg) {
  return f - zygmund_sum(f, cfg.n, cfg.method.s());
}

PairingIntegral pairing_with(const WitnessConfig& cfg, double alpha0,
                             const TrigPoly& f, const TrigPoly& dual) {
  PairingIntegral I;
  I.closed_form = closed_form_I(cfg, alpha0);
  I.quadrature = pairing_quadrature(deviation_of(f, cfg), dual);
  if (std::abs(I.closed_form - I.quadrature) >
      kPairingTol * std::abs(I.closed_form))
    throw ConsistencyError(
        "pairing integral: closed form and quadrature disagree");
  return I;
}

}  // namespace

double calibrate_alpha0(int n, const NormRequest& req) {
  if (n < 1) throw ParameterError("calibration order n must be >= 1");
  const TrigPoly centered = vallee_poussin(n) - TrigPoly::constant(0.5);
  return 1.0 / l1_norm(centered, req);
}

TrigPoly witness_expansion(const PsiSpec& psi, double beta, int n,
                           double alpha0) {
  const PhaseShift ps = phase_shift(beta);
  TrigPoly f;
  f.terms.resize(static_cast<std::size_t>(2 * n - 1));
  for (int k = 1; k <= 2 * n - 1; ++k) {
    const double taper = k <= n ? 1.0 : 2 * (1 - k / (2.0 * n));
    const double amp = alpha0 * psi(k) * taper;
    f.terms[static_cast<std::size_t>(k - 1)] = {amp * ps.cos, amp * ps.sin};
  }
  return f;
}

TrigPoly dual_test_poly(const WitnessConfig& cfg) {
  check_config(cfg);
  const double q = cfg.method.q();
  const PhaseShift ps = phase_shift(cfg.method.beta());
  TrigPoly dual;
  dual.terms.resize(static_cast<std::size_t>(cfg.n - 1));
  for (int k = 1; k < cfg.n; ++k) {
    const double amp = std::pow(eval_g(cfg.psi, cfg.method, k), q - 1) *
                       std::pow(k, -1.0 / q);
    dual.terms[static_cast<std::size_t>(k - 1)] = {amp * ps.cos, amp * ps.sin};
  }
  return dual;
}

double pairing_quadrature(const TrigPoly& a, const TrigPoly& b,
                          std::size_t min_grid) {
  const std::size_t M = std::max(
      next_power_of_two(min_grid),
      next_power_of_two(2 * static_cast<std::size_t>(a.degree() + b.degree()) + 2));
  const auto sa = sample(a, M).values;
  const auto sb = sample(b, M).values;
  double sum = 0.0;
  for (std::size_t j = 0; j < M; ++j) sum += sa[j] * sb[j];
  return 2 * kPi / static_cast<double>(M) * sum;
}

PairingIntegral pairing_I(const WitnessConfig& cfg) {
  check_config(cfg);
  const double alpha0 = calibrate_alpha0(cfg.n);
  return pairing_with(
      cfg, alpha0, witness_expansion(cfg.psi, cfg.method.beta(), cfg.n, alpha0),
      dual_test_poly(cfg));
}

LowerBound lower_bound(const WitnessConfig& cfg) {
  check_config(cfg);
  const double alpha0 = calibrate_alpha0(cfg.n);
  const double sum = g_power_sum(cfg);
  LowerBound lb;
  lb.sum_form = alpha0 * kPi * std::pow(cfg.n, -cfg.method.s()) *
                std::pow(sum, 1.0 / cfg.method.q());
  lb.holder = closed_form_I(cfg, alpha0) /
              lq_norm(dual_test_poly(cfg), {cfg.method.q_prime()});
  return lb;
}

WitnessResult build_witness(const WitnessConfig& cfg) {
  check_config(cfg);
  WitnessResult w;
  w.alpha0 = calibrate_alpha0(cfg.n);
  w.phi = w.alpha0 * (vallee_poussin(cfg.n) - TrigPoly::constant(0.5));
  w.f = witness_expansion(cfg.psi, cfg.method.beta(), cfg.n, w.alpha0);

  const KernelSpec kernel{cfg.psi, cfg.method.beta(), 2 * cfg.n - 1};
  if (max_coeff_diff(w.f, convolve(kernel, w.phi)) > kExpansionTol)
    throw ConsistencyError(
        "witness expansion disagrees with the convolution of phi");

  w.dual = dual_test_poly(cfg);
  w.pairing = pairing_with(cfg, w.alpha0, w.f, w.dual);
  w.dual_norm = lq_norm(w.dual, {cfg.method.q_prime()});
  w.lower_bound = w.pairing.closed_form / w.dual_norm;
  w.lower_bound_sum_form = w.alpha0 * kPi * std::pow(cfg.n, -cfg.method.s()) *
                           std::pow(g_power_sum(cfg), 1.0 / cfg.method.q());
  w.measured_deviation = lq_norm(deviation_of(w.f, cfg), {cfg.method.q()});
  return w;
}

}  // namespace zygmund
