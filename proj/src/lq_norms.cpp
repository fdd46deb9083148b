#include "zygmund/lq_norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <complex>
#include <limits>
#include <span>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include <Eigen/Dense>

#include "zygmund/errors.hpp"
#include "zygmund/sampling.hpp"

namespace zygmund {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr int kMaxDoublings = 12;
// Relative change of E_n between successive best-approximation grids.
constexpr double kRefineTol = 1e-10;

void check_request(const NormRequest& req) {
  if (!(req.q >= 1) || !std::isfinite(req.q))
    throw ParameterError("norm exponent q must lie in [1, inf)");
  if (req.gridM < 16 || !is_power_of_two(req.gridM))
    throw ParameterError("norm grid must be a power of two >= 16");
  if (!(req.tolerance > 0)) throw ParameterError("norm tolerance must be > 0");
}

// Neumaier-compensated sum of |x|^q.
double sum_abs_pow(std::span<const double> xs, double q) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double ax = std::abs(x);
    const double v = q == 1.0 ? ax : q == 2.0 ? ax * ax : std::pow(ax, q);
    const double t = sum + v;
    comp += std::abs(sum) >= v ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double rectangle_norm(std::span<const double> xs, double q) {
  return std::pow(kTwoPi / static_cast<double>(xs.size()) * sum_abs_pow(xs, q),
                  1.0 / q);
}

// Direct evaluation of p and of its antiderivative (without the linear
// a0/2 t part) by rotating e^{ikt}.
struct PolyEval {
  const TrigPoly& p;

  double value(double t) const {
    const std::complex<double> step(std::cos(t), std::sin(t));
    std::complex<double> z = step;
    double sum = 0.5 * p.a0;
    for (const Harmonic& h : p.terms) {
      sum += h.a * z.real() + h.b * z.imag();
      z *= step;
    }
    return sum;
  }

  double antiderivative(double t) const {
    const std::complex<double> step(std::cos(t), std::sin(t));
    std::complex<double> z = step;
    double sum = 0.5 * p.a0 * t;
    for (int k = 1; k <= p.degree(); ++k) {
      const Harmonic& h = p.terms[static_cast<std::size_t>(k - 1)];
      sum += (h.a * z.imag() - h.b * z.real()) / k;
      z *= step;
    }
    return sum;
  }
};

// Norm for q that is not an even integer: the grid locates the sign changes
// of p, each zero is refined by bracketing, and |p|^q is integrated exactly
// between consecutive zeros (antiderivative for q = 1, tanh-sinh otherwise,
// which absorbs the |t - z|^q endpoint behaviour).
double split_norm(const TrigPoly& p, double q, std::size_t M) {
  const std::vector<double> xs = sample(p, M).values;
  const double h = kTwoPi / static_cast<double>(M);
  const PolyEval eval{p};

  std::vector<double> zeros;
  for (std::size_t j = 0; j < M; ++j) {
    const double a = xs[j];
    const double b = xs[(j + 1) % M];
    const double t0 = h * static_cast<double>(j);
    if (a == 0.0) {
      zeros.push_back(t0);
    } else if ((a < 0) != (b < 0) && b != 0.0) {
      auto f = [&](double t) { return eval.value(t); };
      double fa = f(t0), fb = f(t0 + h);
      if ((fa < 0) == (fb < 0)) {
        // Sampled and direct values disagree in sign only at rounding level.
        zeros.push_back(std::abs(fa) < std::abs(fb) ? t0 : t0 + h);
        continue;
      }
      std::uintmax_t iters = 100;
      const auto root = boost::math::tools::toms748_solve(
          f, t0, t0 + h, fa, fb, boost::math::tools::eps_tolerance<double>(52),
          iters);
      zeros.push_back(0.5 * (root.first + root.second));
    }
  }
  if (zeros.empty()) {
    if (q == 1.0) return std::abs(kTwoPi * 0.5 * p.a0);
    return rectangle_norm(xs, q);
  }

  double total = 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    const double lo = zeros[i];
    const double hi = i + 1 < zeros.size() ? zeros[i + 1] : zeros[0] + kTwoPi;
    if (!(hi > lo)) continue;
    if (q == 1.0) {
      total += std::abs(eval.antiderivative(hi) - eval.antiderivative(lo));
    } else {
      total += integrator.integrate(
          [&](double t) { return std::pow(std::abs(eval.value(t)), q); }, lo,
          hi, 1e-13);
    }
  }
  return std::pow(total, 1.0 / q);
}

bool is_even_integer(double q) {
  return q == std::floor(q) && std::fmod(q, 2.0) == 0.0;
}

std::size_t start_grid(const TrigPoly& p, std::size_t gridM) {
  return std::max(gridM, next_power_of_two(2 * static_cast<std::size_t>(p.degree()) + 2));
}

// Coefficient layout for degree-(n-1) polynomials: [c, a_1..a_{n-1},
// b_1..b_{n-1}] with p(t) = c + sum a_k cos kt + b_k sin kt.
TrigPoly unpack(const Eigen::VectorXd& x, int n) {
  TrigPoly p;
  p.a0 = 2 * x(0);
  p.terms.resize(static_cast<std::size_t>(n - 1));
  for (int k = 1; k < n; ++k)
    p.terms[static_cast<std::size_t>(k - 1)] = {x(k), x(n - 1 + k)};
  return p;
}

Eigen::VectorXd pack(const TrigPoly& p, int n) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * n - 1);
  x(0) = p.a0 / 2;
  for (int k = 1; k < n; ++k) {
    x(k) = p.at(k).a;
    x(n - 1 + k) = p.at(k).b;
  }
  return x;
}

// Weighted least-squares fit of samples `target` by degree-(n-1)
// polynomials. The Gram matrix entries are trigonometric moments of the
// weights, read off a single real DFT.
Eigen::VectorXd weighted_fit(std::span<const double> weights,
                             std::span<const double> target, int n) {
  const std::size_t M = weights.size();
  std::vector<double> wf(M);
  for (std::size_t j = 0; j < M; ++j) wf[j] = weights[j] * target[j];
  const auto W = real_dft(weights);
  const auto G = real_dft(wf);
  auto wc = [&](int m) { return W[static_cast<std::size_t>(std::abs(m))].real(); };
  auto ws = [&](int m) {
    const double v = -W[static_cast<std::size_t>(std::abs(m))].imag();
    return m < 0 ? -v : v;
  };

  const int dim = 2 * n - 1;
  Eigen::MatrixXd gram(dim, dim);
  Eigen::VectorXd rhs(dim);
  // index -> (harmonic, is_sine)
  auto harmonic = [n](int u) { return u < n ? u : u - n + 1; };
  auto is_sine = [n](int u) { return u >= n; };
  for (int u = 0; u < dim; ++u) {
    const int k = harmonic(u);
    const auto& g = G[static_cast<std::size_t>(k)];
    rhs(u) = is_sine(u) ? -g.imag() : g.real();
    for (int v = 0; v <= u; ++v) {
      const int l = harmonic(v);
      double e;
      if (!is_sine(u) && !is_sine(v)) {
        e = 0.5 * (wc(k - l) + wc(k + l));
      } else if (is_sine(u) && is_sine(v)) {
        e = 0.5 * (wc(k - l) - wc(k + l));
      } else {
        // cos(c t) sin(s t) = (sin((s + c) t) + sin((s - c) t)) / 2
        const int c = is_sine(u) ? l : k;
        const int s = is_sine(u) ? k : l;
        e = 0.5 * (ws(s + c) + ws(s - c));
      }
      gram(u, v) = e;
      gram(v, u) = e;
    }
  }
  return gram.ldlt().solve(rhs);
}

struct IrlsOutcome {
  Eigen::VectorXd x;
  int iterations = 0;
  bool converged = false;
};

// IRLS for the grid objective sum_j |f(t_j) - t(t_j)|^q on M nodes, started
// from x.
IrlsOutcome irls(const TrigPoly& f, int n, double q, std::size_t M,
                 Eigen::VectorXd x) {
  const std::vector<double> fs = sample(f, M).values;
  auto residual = [&](const Eigen::VectorXd& v) {
    std::vector<double> r = sample(unpack(v, n), M).values;
    for (std::size_t j = 0; j < M; ++j) r[j] = fs[j] - r[j];
    return r;
  };
  auto objective = [&](std::span<const double> r) { return sum_abs_pow(r, q); };

  IrlsOutcome out;
  std::vector<double> r = residual(x);
  double J = objective(r);
  const double step0 = q > 2 ? 1.0 / (q - 1) : 1.0;
  constexpr int kMaxIter = 500;
  int quiet = 0;
  std::vector<double> w(M);
  int it = 0;
  for (; it < kMaxIter && J > 0; ++it) {
    double rmax = 0.0;
    for (double v : r) rmax = std::max(rmax, std::abs(v));
    if (q < 2) {
      const double floor = 1e-10 * rmax;
      for (std::size_t j = 0; j < M; ++j)
        w[j] = std::pow(std::max(std::abs(r[j]), floor), q - 2);
    } else {
      const double floor = 1e-10 * std::pow(rmax, q - 2);
      for (std::size_t j = 0; j < M; ++j)
        w[j] = std::max(std::pow(std::abs(r[j]), q - 2), floor);
    }
    const Eigen::VectorXd target = weighted_fit(w, fs, n);
    const Eigen::VectorXd dir = target - x;

    double step = step0;
    bool improved = false;
    Eigen::VectorXd trial;
    std::vector<double> r_trial;
    double J_trial = J;
    for (int half = 0; half < 30; ++half, step /= 2) {
      trial = x + step * dir;
      r_trial = residual(trial);
      J_trial = objective(r_trial);
      if (J_trial <= J) {
        improved = true;
        break;
      }
    }
    if (!improved) {
      out.converged = true;  // no descent left at grid resolution
      break;
    }
    const double change = (J - J_trial) / J;
    x = std::move(trial);
    r = std::move(r_trial);
    J = J_trial;
    quiet = change < 1e-9 ? quiet + 1 : 0;
    if (quiet >= 3) {
      out.converged = true;
      ++it;
      break;
    }
  }
  out.x = std::move(x);
  out.iterations = it;
  return out;
}

}  // namespace

double lq_norm(const TrigPoly& p, const NormRequest& req) {
  check_request(req);
  const bool even = is_even_integer(req.q);
  const auto deg = static_cast<std::size_t>(p.degree());
  // Exactness for even q; zero bracketing needs a few nodes per oscillation.
  std::size_t M = std::max(
      start_grid(p, req.gridM),
      next_power_of_two(even ? static_cast<std::size_t>(req.q) * deg + 2
                             : 8 * (deg + 1)));
  auto level = [&](std::size_t m) {
    return even ? rectangle_norm(sample(p, m).values, req.q)
                : split_norm(p, req.q, m);
  };
  double prev = level(M);
  for (int i = 0; i < kMaxDoublings; ++i) {
    M *= 2;
    const double cur = level(M);
    if (std::abs(cur - prev) <= req.tolerance * cur || cur == prev) return cur;
    prev = cur;
  }
  throw ConvergenceError("lq_norm did not converge after 12 grid doublings");
}

double l2_norm_coeffs(const TrigPoly& p) {
  double sum = 0.0;
  for (const auto& h : p.terms) sum += h.a * h.a + h.b * h.b;
  return std::sqrt(kTwoPi * (p.a0 / 2) * (p.a0 / 2) + std::numbers::pi * sum);
}

double l1_norm(const TrigPoly& p, const NormRequest& req) {
  NormRequest r = req;
  r.q = 1.0;
  return lq_norm(p, r);
}

BestApproxResult best_approx(const TrigPoly& f, int n, const NormRequest& req) {
  if (n < 1) throw ParameterError("best approximation order n must be >= 1");
  check_request(req);
  if (!(req.q > 1)) throw ParameterError("best approximation needs q > 1");

  BestApproxResult result;
  if (f.degree() <= n - 1) {
    result.minimizer = f;
    result.converged = true;
    return result;
  }
  if (req.q == 2.0) {
    result.minimizer = truncate(f, n - 1);
    result.value = lq_norm(f - result.minimizer, req);
    result.converged = true;
    return result;
  }

  // The grid objective is exact for even q once M > q * degree. Otherwise
  // it only approximates the integral, so the grid is doubled (warm start)
  // until the exact norm of the residual settles.
  const double q = req.q;
  const bool even = is_even_integer(q);
  const auto deg = static_cast<std::size_t>(f.degree());
  std::size_t M = std::max(req.gridM, next_power_of_two(8 * (deg + 1)));
  if (even) M = std::max(M, next_power_of_two(static_cast<std::size_t>(q) * deg + 2));
  constexpr int kMaxRefinements = 10;

  Eigen::VectorXd x = pack(truncate(f, n - 1), n);
  double prev = std::numeric_limits<double>::infinity();
  for (int level = 0; level <= kMaxRefinements; ++level, M *= 2) {
    const IrlsOutcome step = irls(f, n, q, M, x);
    x = step.x;
    result.iterations += step.iterations;
    const double value = lq_norm(f - unpack(x, n), req);
    if (value <= prev) {
      result.minimizer = unpack(x, n);
      result.value = value;
    }
    result.converged = step.converged;
    if (even || std::abs(prev - value) <= kRefineTol * value) break;
    prev = value;
    if (level == kMaxRefinements) result.converged = false;
  }
  return result;
}

}  // namespace zygmund
