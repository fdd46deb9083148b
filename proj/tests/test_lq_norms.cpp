#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "oracles.hpp"
#include "zygmund/errors.hpp"
#include "zygmund/lq_norms.hpp"
#include "zygmund/trig_poly.hpp"

using namespace zygmund;
using oracle::kPi;

namespace {

// Nelder-Mead on R^3 for small reference minimizations.
std::array<double, 3> nelder_mead(const std::function<double(const std::array<double, 3>&)>& F,
                                  std::array<double, 3> x0, double scale) {
  std::array<std::array<double, 3>, 4> s;
  s[0] = x0;
  for (int i = 0; i < 3; ++i) {
    s[i + 1] = x0;
    s[i + 1][i] += scale;
  }
  std::array<double, 4> fv;
  for (int i = 0; i < 4; ++i) fv[i] = F(s[i]);
  for (int iter = 0; iter < 4000; ++iter) {
    std::array<int, 4> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    const int best = idx[0], worst = idx[3], second = idx[2];
    if (fv[worst] - fv[best] < 1e-15 * std::abs(fv[best])) break;
    std::array<double, 3> c{};
    for (int i : {idx[0], idx[1], idx[2]})
      for (int d = 0; d < 3; ++d) c[d] += s[i][d] / 3;
    auto along = [&](double t) {
      std::array<double, 3> p;
      for (int d = 0; d < 3; ++d) p[d] = c[d] + t * (s[worst][d] - c[d]);
      return p;
    };
    const auto xr = along(-1);
    const double fr = F(xr);
    if (fr < fv[best]) {
      const auto xe = along(-2);
      const double fe = F(xe);
      if (fe < fr) s[worst] = xe, fv[worst] = fe;
      else s[worst] = xr, fv[worst] = fr;
    } else if (fr < fv[second]) {
      s[worst] = xr, fv[worst] = fr;
    } else {
      const auto xc = along(0.5);
      const double fc = F(xc);
      if (fc < fv[worst]) {
        s[worst] = xc, fv[worst] = fc;
      } else {
        for (int i : {idx[1], idx[2], idx[3]}) {
          for (int d = 0; d < 3; ++d) s[i][d] = s[best][d] + 0.5 * (s[i][d] - s[best][d]);
          fv[i] = F(s[i]);
        }
      }
    }
  }
  return s[static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin())];
}

TrigPoly degree_one(const std::array<double, 3>& x) {
  return TrigPoly{2 * x[0], {{x[1], x[2]}}};
}

}  // namespace

TEST_CASE("lq_norm examples") {
  for (double q : {1.0, 1.5, 2.0, 3.0, 4.0})
    CHECK(lq_norm(TrigPoly::constant(1.0), {q}) ==
          doctest::Approx(std::pow(2 * kPi, 1 / q)).epsilon(1e-13));
  CHECK(lq_norm(TrigPoly::cosine(1), {2.0}) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(lq_norm(TrigPoly::cosine(1), {4.0}) ==
        doctest::Approx(std::pow(3 * kPi / 4, 0.25)).epsilon(1e-14));
  CHECK(oracle::norm(TrigPoly::cosine(1), 4.0) ==
        doctest::Approx(std::pow(3 * kPi / 4, 0.25)).epsilon(1e-12));
}

TEST_CASE("l2_norm_coeffs examples") {
  CHECK(l2_norm_coeffs(TrigPoly::cosine(1)) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-15));
  CHECK(l2_norm_coeffs(TrigPoly::constant(1.0)) ==
        doctest::Approx(std::sqrt(2 * kPi)).epsilon(1e-15));
  oracle::Rng rng(3);
  const TrigPoly p = oracle::random_poly(rng, 20, false);
  CHECK(oracle::rel_err(lq_norm(p, {2.0}), l2_norm_coeffs(p)) < 1e-10);
}

TEST_CASE("l1_norm examples") {
  CHECK(l1_norm(TrigPoly::constant(1.0)) == doctest::Approx(2 * kPi).epsilon(1e-14));
  CHECK(l1_norm(TrigPoly::cosine(1)) == doctest::Approx(4.0).epsilon(1e-13));
  const double vp = l1_norm(vallee_poussin(8));
  const double centered = l1_norm(vallee_poussin(8) - TrigPoly::constant(0.5));
  CHECK(std::isfinite(centered));
  CHECK(centered <= kPi + vp);
}

TEST_CASE("non-even q norms agree with brute-force quadrature") {
  oracle::Rng rng(13);
  for (double q : {1.0, 1.25, 1.5, 3.0, 5.5}) {
    for (int i = 0; i < 4; ++i) {
      const TrigPoly p = oracle::random_poly(rng, oracle::random_degree(rng, 1, 12), i % 2 == 0);
      CHECK(oracle::rel_err(lq_norm(p, {q}), oracle::norm(p, q, 1 << 17)) < 1e-7);
    }
  }
  CHECK(lq_norm(TrigPoly::cosine(1), {1.5}) ==
        doctest::Approx(2.303495162643662).epsilon(1e-12));
}

TEST_CASE("lq_norm request validation") {
  CHECK_THROWS_AS(lq_norm(TrigPoly::cosine(1), {0.5}), ParameterError);
  CHECK_THROWS_AS(lq_norm(TrigPoly::cosine(1), {2.0, 8}), ParameterError);
  CHECK_THROWS_AS(lq_norm(TrigPoly::cosine(1), {2.0, 48}), ParameterError);
  CHECK_THROWS_AS(lq_norm(TrigPoly::cosine(1), {2.0, 64, 0.0}), ParameterError);
}

TEST_CASE("property: homogeneity and triangle inequality") {
  oracle::Rng rng(19);
  for (double q : {1.0, 1.5, 2.0, 3.0, 4.0}) {
    for (int i = 0; i < 6; ++i) {
      const TrigPoly p = oracle::random_poly(rng, oracle::random_degree(rng, 1, 20), false);
      const TrigPoly r = oracle::random_poly(rng, oracle::random_degree(rng, 1, 20), false);
      const double alpha = -3.0 + 1.1 * i;
      const double np = lq_norm(p, {q});
      CHECK(oracle::rel_err(lq_norm(alpha * p, {q}), std::abs(alpha) * np) < 1e-10);
      CHECK(lq_norm(p + r, {q}) <= (np + lq_norm(r, {q})) * (1 + 1e-10));
    }
  }
}

TEST_CASE("property: normalized norm is nondecreasing in q") {
  oracle::Rng rng(23);
  for (int i = 0; i < 10; ++i) {
    const TrigPoly p = oracle::random_poly(rng, oracle::random_degree(rng, 1, 16), false);
    double prev = 0;
    for (double q : {1.5, 2.0, 3.0, 4.0}) {
      const double v = lq_norm(p, {q}) / std::pow(2 * kPi, 1 / q);
      CHECK(v >= prev * (1 - 1e-12));
      prev = v;
    }
  }
}

TEST_CASE("best_approx examples") {
  const TrigPoly f = TrigPoly::cosine(1) + TrigPoly::cosine(2);
  const BestApproxResult r = best_approx(f, 2, {2.0});
  CHECK(r.value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(max_coeff_diff(r.minimizer, TrigPoly::cosine(1)) == 0.0);
  CHECK(r.minimizer.degree() <= 1);

  const TrigPoly low = TrigPoly::cosine(2) + TrigPoly::sine(1);
  for (double q : {1.5, 2.0, 3.0}) {
    const BestApproxResult z = best_approx(low, 3, {q});
    CHECK(z.value == 0.0);
    CHECK(max_coeff_diff(z.minimizer, low) == 0.0);
  }

  // cos 2t is odd under t -> t + pi/2 and even under t -> t + pi, so the
  // best degree-1 approximation in any L_q is 0.
  const double exact = std::pow(3 * kPi / 4, 0.25);
  const BestApproxResult c64 = best_approx(TrigPoly::cosine(2), 2, {4.0, 64});
  const BestApproxResult c512 = best_approx(TrigPoly::cosine(2), 2, {4.0, 512});
  CHECK(c64.value >= 0);
  CHECK(c64.value <= lq_norm(TrigPoly::cosine(2), {4.0}) * (1 + 1e-12));
  CHECK(c64.value == doctest::Approx(exact).epsilon(1e-8));
  CHECK(c512.value == doctest::Approx(c64.value).epsilon(1e-8));
}

TEST_CASE("best_approx preconditions") {
  CHECK_THROWS_AS(best_approx(TrigPoly::cosine(3), 0, {2.0}), ParameterError);
  CHECK_THROWS_AS(best_approx(TrigPoly::cosine(3), 2, {1.0}), ParameterError);
}

TEST_CASE("best_approx matches a direct minimization for n = 2") {
  oracle::Rng rng(31);
  for (double q : {1.5, 3.0, 4.0}) {
    for (int i = 0; i < 2; ++i) {
      const TrigPoly f = oracle::random_poly(rng, 4, false);
      auto objective = [&](const std::array<double, 3>& x) {
        return oracle::norm(f - degree_one(x), q, 4096);
      };
      const TrigPoly t0 = truncate(f, 1);
      const auto xmin = nelder_mead(objective, {t0.a0 / 2, t0.at(1).a, t0.at(1).b}, 0.2);
      const double reference = objective(xmin);
      const BestApproxResult r = best_approx(f, 2, {q});
      CHECK(r.converged);
      CHECK(r.value <= reference * (1 + 1e-7));
      CHECK(oracle::rel_err(r.value, reference) < 1e-5);
    }
  }
}

TEST_CASE("property: best_approx beats every Zygmund sum and Parseval at q = 2") {
  oracle::Rng rng(37);
  for (int i = 0; i < 8; ++i) {
    const TrigPoly f = oracle::random_poly(rng, oracle::random_degree(rng, 6, 24), false);
    const int n = oracle::random_degree(rng, 2, 6);
    for (double q : {1.5, 2.0, 3.0}) {
      const BestApproxResult r = best_approx(f, n, {q});
      CHECK(r.minimizer.degree() <= n - 1);
      CHECK(r.value >= 0);
      for (double s : {0.5, 1.0, 2.0, 4.0})
        CHECK(r.value <= lq_norm(f - zygmund_sum(f, n, s), {q}) * (1 + 1e-10));
    }
    double tail = 0;
    for (int k = n; k <= f.degree(); ++k) tail += f.at(k).a * f.at(k).a + f.at(k).b * f.at(k).b;
    CHECK(oracle::rel_err(best_approx(f, n, {2.0}).value, std::sqrt(kPi * tail)) < 1e-8);
  }
}
