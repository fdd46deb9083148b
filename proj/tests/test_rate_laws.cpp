#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zygmund/errors.hpp"
#include "zygmund/extremal_witness.hpp"
#include "zygmund/lq_norms.hpp"
#include "zygmund/rate_laws.hpp"

using namespace zygmund;
using oracle::kPi;

namespace {

const std::vector<int> kGrid{8, 16, 32, 64, 128, 256};

double rate(const PsiSpec& psi, const MethodParams& m, int n) {
  return theoretical_rate(psi, m, classify_regime(psi, m), n);
}

// Composite Simpson for int_1^n g^q / t dt in u = ln t.
double slow_integral_oracle(const PsiSpec& psi, const MethodParams& m, int n) {
  const int N = 20000;
  const double L = std::log(static_cast<double>(n));
  const double h = L / N;
  double sum = 0;
  for (int i = 0; i <= N; ++i) {
    const double w = (i == 0 || i == N) ? 1 : (i % 2 ? 4 : 2);
    sum += w * std::pow(eval_g(psi, m, std::exp(i * h)), m.q());
  }
  return sum * h / 3;
}

TrigPoly random_unit_density(oracle::Rng& rng, int degree) {
  const TrigPoly p = oracle::random_poly(rng, degree, true);
  return (1.0 / l1_norm(p)) * p;
}

}  // namespace

TEST_CASE("theoretical_rate examples") {
  const MethodParams m(1, 2);
  CHECK(rate(PsiSpec::power(1), m, 16) == doctest::Approx(0.25).epsilon(1e-15));
  for (int n : {4, 10, 100, 1000})
    CHECK(rate(PsiSpec::power(1.5), m, n) ==
          doctest::Approx(std::sqrt(std::log(static_cast<double>(n))) / n).epsilon(1e-12));
  CHECK(rate(PsiSpec::power(3), MethodParams(2, 3), 10) ==
        doctest::Approx(0.01).epsilon(1e-15));
  CHECK(rate(PsiSpec::power_log(4, 1, 1), MethodParams(2, 3), 10) ==
        doctest::Approx(0.01).epsilon(1e-15));
}

TEST_CASE("theoretical_rate for a log-perturbed boundary family") {
  const PsiSpec psi = PsiSpec::power_inv_log(1.5, 1, 1);
  const MethodParams m(1, 2);
  REQUIRE(classify_regime(psi, m).tag == RegimeTag::ZygmundSlow);
  for (int n : {8, 64, 512}) {
    const double expected = std::sqrt(slow_integral_oracle(psi, m, n)) / n;
    CHECK(oracle::rel_err(rate(psi, m, n), expected) < 1e-8);
  }
}

TEST_CASE("theoretical_rate rejects regime mismatch and small n") {
  const MethodParams m(1, 2);
  CHECK_THROWS_AS(theoretical_rate(PsiSpec::power(1), m, {RegimeTag::AMinus, 0.1}, 16),
                  PreconditionError);
  CHECK_THROWS_AS(
      theoretical_rate(PsiSpec::power(1), m, {RegimeTag::Indeterminate, {}}, 16),
      PreconditionError);
  CHECK_THROWS_AS(rate(PsiSpec::power(1), m, 1), ParameterError);
}

TEST_CASE("weyl_nagy_rate examples") {
  CHECK(weyl_nagy_rate(0.75, 1, 2, 16) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(weyl_nagy_case(0.75, 1, 2) == 1);
  CHECK(weyl_nagy_case(1.5, 1, 2) == 2);
  CHECK(weyl_nagy_case(3, 1, 2) == 3);
  // Nearest integer to e^2.
  CHECK(weyl_nagy_rate(1.5, 1, 2, 7) ==
        doctest::Approx(std::sqrt(std::log(7.0)) / 7).epsilon(1e-15));
  CHECK(weyl_nagy_rate(3, 1, 2, 10) == doctest::Approx(0.1).epsilon(1e-15));
  try {
    weyl_nagy_rate(0.4, 1, 2, 16);
    FAIL("expected a parameter error");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("requires r>1-1/q") != std::string::npos);
  }
  CHECK_THROWS_AS(weyl_nagy_rate(0.5, 1, 2, 16), ParameterError);
}

TEST_CASE("property: weyl_nagy_rate equals theoretical_rate for pure powers") {
  for (double s : {0.5, 1.0, 2.0})
    for (double q : {1.5, 2.0, 3.0}) {
      const double critical = s + 1 - 1 / q;
      for (double r : {1 - 1 / q + 0.2, critical - 0.1, critical, critical + 0.5}) {
        const MethodParams m(s, q);
        for (int n : {4, 32, 500})
          CHECK(oracle::rel_err(weyl_nagy_rate(r, s, q, n), rate(PsiSpec::power(r), m, n)) <
                1e-12);
      }
    }
}

TEST_CASE("property: theoretical_rate is strictly decreasing beyond n = 4") {
  const std::vector<std::pair<PsiSpec, MethodParams>> cases{
      {PsiSpec::power(0.75), MethodParams(1, 2)},
      {PsiSpec::power(1.5), MethodParams(1, 2)},
      {PsiSpec::power(2.5), MethodParams(1, 2)},
      {PsiSpec::power_log(1, 1, 55), MethodParams(1, 2)},
      {PsiSpec::power_inv_log(1.5, 1, 1), MethodParams(1, 2)},
      {PsiSpec::power(1.2), MethodParams(0.5, 3)},
      {PsiSpec::power(2), MethodParams(2, 1.5)}};
  for (const auto& [psi, m] : cases) {
    double prev = rate(psi, m, 4);
    for (int n = 5; n <= 600; ++n) {
      const double cur = rate(psi, m, n);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("property: the APlus rate approaches n^{-s} at the boundary") {
  const MethodParams m(1, 2);
  const double critical = 1.5;
  for (int n : {16, 128}) {
    double prev_gap = INFINITY;
    for (double d : {0.1, 0.01, 0.001, 1e-5}) {
      const double gap = std::abs(rate(PsiSpec::power(critical - d), m, n) * n - 1);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
    CHECK(prev_gap < 1e-4);
  }
}

TEST_CASE("property: boundary rate with the sum in place of the integral") {
  const PsiSpec psi = PsiSpec::power(1.5);
  const MethodParams m(1, 2);
  for (int n = 8; n <= 512; n *= 2) {
    double sum = 0;
    for (int k = 1; k < n; ++k) sum += std::pow(eval_g(psi, m, k), 2) / k;
    const double ratio = (std::sqrt(sum) / n) / rate(psi, m, n);
    CHECK(ratio <= 2);
    CHECK(ratio >= 0.5);
  }
}

TEST_CASE("upper_bound_estimate dominates deviations of unit densities") {
  const PsiSpec psi = PsiSpec::power(1);
  const MethodParams m(1, 2);
  const UpperBoundEstimate est = upper_bound_estimate(psi, m, 16);
  CHECK(est.value > 0);
  CHECK(est.N >= 64);
  CHECK(est.remainder >= 0);
  oracle::Rng rng(101);
  for (int i = 0; i < 50; ++i) {
    const TrigPoly phi = random_unit_density(rng, oracle::random_degree(rng, 1, 48));
    const KernelSpec kernel{psi, m.beta(), std::max(phi.degree(), 16)};
    const double dev = lq_norm(class_deviation_coeffs(phi, kernel, 16, m.s()), {2.0});
    CHECK(dev <= est.value);
  }
  CHECK(build_witness({psi, m, 16}).measured_deviation <= est.value);
}

TEST_CASE("upper_bound_estimate is banded against the APlus rate") {
  const PsiSpec psi = PsiSpec::power(1);
  const MethodParams m(1, 2);
  std::vector<double> majorants, rates;
  for (int n : kGrid) {
    majorants.push_back(upper_bound_estimate(psi, m, n).value);
    rates.push_back(rate(psi, m, n));
  }
  const auto [lo, hi] = ratio_band(majorants, rates);
  CHECK(lo > 0);
  CHECK(hi / lo <= 4);
}

TEST_CASE("upper_bound_estimate: large s leaves only the tail") {
  const PsiSpec psi = PsiSpec::power(2);
  // The scaled head decays like (1 - 1/n)^s.
  double prev = INFINITY;
  for (double s : {20.0, 40.0, 80.0, 120.0}) {
    const UpperBoundEstimate est = upper_bound_estimate(psi, MethodParams(s, 2), 16);
    const double tail_only = (est.tail_norm + est.remainder) / kPi;
    const double excess = est.value / tail_only - 1;
    CHECK(excess < prev);
    prev = excess;
  }
  CHECK(prev < 1e-3);
  CHECK_THROWS_AS(upper_bound_estimate(psi, MethodParams(1, 2), 0), ParameterError);
  CHECK_THROWS_AS(upper_bound_estimate(psi, MethodParams(1, 2), 8, 0), ParameterError);
}

TEST_CASE("upper_bound_estimate with non-even q") {
  for (double q : {1.5, 3.0}) {
    const PsiSpec psi = PsiSpec::power(1);
    const MethodParams m(1, q);
    const UpperBoundEstimate est = upper_bound_estimate(psi, m, 8);
    CHECK(std::isfinite(est.value));
    CHECK(build_witness({psi, m, 8}).measured_deviation <= est.value);
  }
}

TEST_CASE("ratio_experiment in the three regimes") {
  const MethodParams m(1, 2);
  const RateReport plus = ratio_experiment(PsiSpec::power(1), m, kGrid, 4);
  CHECK(plus.verdict);
  CHECK(plus.regime.tag == RegimeTag::APlus);
  CHECK(plus.dominated);
  CHECK(plus.deviations.size() == kGrid.size());

  const RateReport minus = ratio_experiment(PsiSpec::power(2.5), m, kGrid, 4);
  CHECK(minus.verdict);
  std::vector<double> scaled;
  for (std::size_t i = 0; i < kGrid.size(); ++i) scaled.push_back(minus.deviations[i] * kGrid[i]);
  const auto [slo, shi] = ratio_band(scaled, std::vector<double>(kGrid.size(), 1.0));
  CHECK(shi / slo <= 4);

  const RateReport slow = ratio_experiment(PsiSpec::power(1.5), m, kGrid, 4);
  CHECK(slow.verdict);
  CHECK(slow.regime.tag == RegimeTag::ZygmundSlow);
}

TEST_CASE("ratio_experiment input validation") {
  const PsiSpec psi = PsiSpec::power(1);
  const MethodParams m(1, 2);
  CHECK_THROWS_AS(ratio_experiment(psi, m, {8, 16, 32, 64}, 4), ParameterError);
  CHECK_THROWS_AS(ratio_experiment(psi, m, {8, 16, 16, 64, 128}, 4), ParameterError);
  CHECK_THROWS_AS(ratio_experiment(psi, m, {2, 16, 32, 64, 128}, 4), ParameterError);
  CHECK_THROWS_AS(ratio_experiment(psi, m, {8, 16, 32, 64, 2048}, 4), ParameterError);
  CHECK_THROWS_AS(ratio_experiment(psi, m, kGrid, 0.5), ParameterError);
}

TEST_CASE("a tight band limit turns the verdict false without an error") {
  const RateReport r = ratio_experiment(PsiSpec::power(1), MethodParams(1, 2), kGrid, 1.0);
  CHECK_FALSE(r.verdict);
  CHECK(r.ratio_spread() > 1.0);
}

TEST_CASE("best_vs_method_experiment") {
  const PsiSpec psi = PsiSpec::power(0.75);
  const RateReport r = best_vs_method_experiment(psi, MethodParams(1, 2), kGrid, 5);
  CHECK(r.verdict);
  CHECK(r.dominated);
  for (std::size_t i = 0; i < kGrid.size(); ++i) CHECK(r.lower_bounds[i] <= r.deviations[i]);

  // The witness f does not depend on s, so neither does E_n(f).
  std::vector<RateReport> by_s;
  for (double s : {0.5, 1.0, 2.0})
    by_s.push_back(best_vs_method_experiment(psi, MethodParams(s, 2), kGrid, 5));
  for (const RateReport& rep : by_s) {
    CHECK(rep.dominated);
    CHECK(rep.ratio_spread() <= 5);
    CHECK(rep.lower_spread() <= 5);
    for (std::size_t i = 0; i < kGrid.size(); ++i)
      CHECK(rep.lower_bounds[i] == doctest::Approx(by_s[0].lower_bounds[i]).epsilon(1e-12));
    CHECK(rep.ratio_band.second / by_s[1].ratio_band.second <= 5);
    CHECK(by_s[1].ratio_band.second / rep.ratio_band.second <= 5);
  }

  CHECK_THROWS_AS(best_vs_method_experiment(PsiSpec::power(2.5), MethodParams(1, 2), kGrid, 5),
                  PreconditionError);
  CHECK_THROWS_AS(best_vs_method_experiment(PsiSpec::power(0.4), MethodParams(1, 2), kGrid, 5),
                  PreconditionError);
  CHECK_THROWS_AS(best_vs_method_experiment(psi, MethodParams(1, 2), {}, 5), ParameterError);
}

TEST_CASE("loglog_slope and ratio_band") {
  std::vector<double> y;
  for (int n : kGrid) y.push_back(3.0 * std::pow(n, -0.7));
  CHECK(loglog_slope(kGrid, y) == doctest::Approx(-0.7).epsilon(1e-12));
  const auto [lo, hi] = ratio_band({1, 4, 9}, {1, 2, 3});
  CHECK(lo == 1);
  CHECK(hi == 3);
}
