#include "zygmund/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "zygmund/errors.hpp"

namespace zygmund {

namespace {

constexpr double kPi = std::numbers::pi;

Harmonic rotate(Harmonic h, PhaseShift ps) {
  return {h.a * ps.cos - h.b * ps.sin, h.a * ps.sin + h.b * ps.cos};
}

Harmonic rotate_back(Harmonic h, PhaseShift ps) {
  return {h.a * ps.cos + h.b * ps.sin, -h.a * ps.sin + h.b * ps.cos};
}

void require_zero_mean(const TrigPoly& phi) {
  if (std::abs(phi.a0) > 1e-12)
    throw PreconditionError("phi must be orthogonal to constants (a0 = 0)");
}

// Upper bound on int_M^inf psi(t)^power dt for analytic families.
double analytic_tail_integral(const PsiSpec& psi, double M, double power) {
  const double rp = psi.r() * power;
  const double inf = std::numeric_limits<double>::infinity();
  if (psi.family() == PsiFamily::Power) {
    if (rp <= 1) return inf;
    return std::pow(M, 1 - rp) / (rp - 1);
  }
  if (rp < 1) return inf;
  if (rp == 1) {
    // 1 / (t ln^{ap}(t + c)) <= 1 / (t ln^{ap} t) for t > 1.
    const double ap = psi.alpha() * power;
    if (psi.family() != PsiFamily::PowerInvLog || ap <= 1) return inf;
    return std::pow(std::log(M), 1 - ap) / (ap - 1);
  }
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(
      [&](double t) { return std::pow(psi(t), power); }, M, inf);
}

}  // namespace

Harmonic TrigPoly::at(int k) const noexcept {
  if (k < 1 || k > degree()) return {};
  return terms[static_cast<std::size_t>(k - 1)];
}

double TrigPoly::operator()(double t) const {
  double sum = 0.5 * a0;
  for (int k = 1; k <= degree(); ++k) {
    const Harmonic& h = terms[static_cast<std::size_t>(k - 1)];
    sum += h.a * std::cos(k * t) + h.b * std::sin(k * t);
  }
  return sum;
}

TrigPoly TrigPoly::normalized() const {
  TrigPoly out = *this;
  while (!out.terms.empty() && out.terms.back().a == 0.0 &&
         out.terms.back().b == 0.0)
    out.terms.pop_back();
  return out;
}

TrigPoly TrigPoly::cosine(int k, double amplitude) {
  TrigPoly p;
  p.terms.resize(static_cast<std::size_t>(k));
  p.terms.back().a = amplitude;
  return p;
}

TrigPoly TrigPoly::sine(int k, double amplitude) {
  TrigPoly p;
  p.terms.resize(static_cast<std::size_t>(k));
  p.terms.back().b = amplitude;
  return p;
}

TrigPoly operator+(const TrigPoly& lhs, const TrigPoly& rhs) {
  TrigPoly out;
  out.a0 = lhs.a0 + rhs.a0;
  const int deg = std::max(lhs.degree(), rhs.degree());
  out.terms.resize(static_cast<std::size_t>(deg));
  for (int k = 1; k <= deg; ++k) {
    out.terms[static_cast<std::size_t>(k - 1)] = {lhs.at(k).a + rhs.at(k).a,
                                                  lhs.at(k).b + rhs.at(k).b};
  }
  return out;
}

TrigPoly operator*(double scale, const TrigPoly& p) {
  TrigPoly out = p;
  out.a0 *= scale;
  for (auto& h : out.terms) {
    h.a *= scale;
    h.b *= scale;
  }
  return out;
}

TrigPoly operator-(const TrigPoly& lhs, const TrigPoly& rhs) {
  return lhs + (-1.0) * rhs;
}

double max_coeff_diff(const TrigPoly& lhs, const TrigPoly& rhs) {
  double diff = std::abs(lhs.a0 - rhs.a0);
  const int deg = std::max(lhs.degree(), rhs.degree());
  for (int k = 1; k <= deg; ++k) {
    diff = std::max(diff, std::abs(lhs.at(k).a - rhs.at(k).a));
    diff = std::max(diff, std::abs(lhs.at(k).b - rhs.at(k).b));
  }
  return diff;
}

double eval_poly(const TrigPoly& p, double t) { return p(t); }

PhaseShift phase_shift(double beta) {
  if (beta == std::floor(beta) && std::abs(beta) < 1e15) {
    static constexpr PhaseShift kQuarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const auto idx = static_cast<long long>(beta) % 4;
    return kQuarter[(idx + 4) % 4];
  }
  const double theta = beta * kPi / 2;
  return {std::cos(theta), std::sin(theta)};
}

TrigPoly dirichlet(int k) {
  if (k < 1) throw ParameterError("Dirichlet kernel order must be >= 1");
  TrigPoly p;
  p.a0 = 1.0;
  p.terms.assign(static_cast<std::size_t>(k), Harmonic{1.0, 0.0});
  return p;
}

double dirichlet_closed(int k, double t) {
  if (k < 1) throw ParameterError("Dirichlet kernel order must be >= 1");
  const double half = std::sin(t / 2);
  if (std::abs(half) < 1e-8) return dirichlet(k)(t);
  return std::sin((k + 0.5) * t) / (2 * half);
}

TrigPoly vallee_poussin(int m) {
  if (m < 1) throw ParameterError("Vallee-Poussin kernel order must be >= 1");
  TrigPoly p = dirichlet(m);
  p.terms.resize(static_cast<std::size_t>(2 * m - 1));
  for (int k = m + 1; k <= 2 * m - 1; ++k)
    p.terms[static_cast<std::size_t>(k - 1)].a = 2 * (1 - k / (2.0 * m));
  return p;
}

TrigPoly vallee_poussin_averaged(int m) {
  if (m < 1) throw ParameterError("Vallee-Poussin kernel order must be >= 1");
  TrigPoly sum;
  for (int k = m; k <= 2 * m - 1; ++k) sum = sum + dirichlet(k);
  return (1.0 / m) * sum;
}

double psi_tail_sum(const PsiSpec& psi, int N, double power) {
  constexpr int kDirect = 4096;
  long long last = static_cast<long long>(N) + kDirect;
  if (!psi.analytic())
    last = std::max(last, static_cast<long long>(psi.table().size()));
  double sum = 0.0;
  for (long long k = N + 1; k <= last; ++k)
    sum += std::pow(psi(static_cast<double>(k)), power);

  const auto M = static_cast<double>(last);
  if (psi.analytic()) return sum + analytic_tail_integral(psi, M, power);

  const double rp = psi.r() * power;
  if (rp <= 1)
    throw ConvergenceError(
        "tabulated psi: declared decay exponent too small for a convergent "
        "tail");
  const auto K = static_cast<double>(psi.table().size());
  return sum + std::pow(psi.table().back(), power) * std::pow(K, rp) *
                   std::pow(M, 1 - rp) / (rp - 1);
}

KernelPoly kernel_poly(const KernelSpec& kernel) {
  if (kernel.N < 1) throw ParameterError("kernel truncation N must be >= 1");
  const PhaseShift ps = phase_shift(kernel.beta);
  KernelPoly out;
  out.poly.terms.resize(static_cast<std::size_t>(kernel.N));
  for (int k = 1; k <= kernel.N; ++k) {
    const double amp = kernel.psi(k);
    out.poly.terms[static_cast<std::size_t>(k - 1)] = {amp * ps.cos,
                                                       amp * ps.sin};
  }
  out.tail.sum = psi_tail_sum(kernel.psi, kernel.N, 1.0);
  out.tail.l2 = std::sqrt(kPi * psi_tail_sum(kernel.psi, kernel.N, 2.0));
  return out;
}

TrigPoly convolve(const KernelSpec& kernel, const TrigPoly& phi) {
  require_zero_mean(phi);
  if (kernel.N < phi.degree())
    throw PreconditionError("kernel truncation N is below the degree of phi");
  const PhaseShift ps = phase_shift(kernel.beta);
  TrigPoly f;
  f.terms.resize(phi.terms.size());
  for (int k = 1; k <= phi.degree(); ++k) {
    const Harmonic h = rotate(phi.at(k), ps);
    const double amp = kernel.psi(k);
    f.terms[static_cast<std::size_t>(k - 1)] = {amp * h.a, amp * h.b};
  }
  return f;
}

TrigPoly psi_beta_derivative(const TrigPoly& f, const KernelSpec& kernel) {
  const PhaseShift ps = phase_shift(kernel.beta);
  TrigPoly phi;
  phi.terms.resize(f.terms.size());
  for (int k = 1; k <= f.degree(); ++k) {
    const double amp = kernel.psi(k);
    if (amp < 1e-300)
      throw DomainError("psi(" + std::to_string(k) +
                        ") underflows; the (psi, beta)-derivative is ill-posed");
    const Harmonic h = rotate_back(f.at(k), ps);
    phi.terms[static_cast<std::size_t>(k - 1)] = {h.a / amp, h.b / amp};
  }
  return phi;
}

TrigPoly zygmund_sum(const TrigPoly& f, int n, double s) {
  if (n < 1) throw ParameterError("Zygmund sum order n must be >= 1");
  if (!(s > 0)) throw ParameterError("Zygmund exponent s must be positive");
  TrigPoly out;
  out.a0 = f.a0;
  const int deg = std::min(n - 1, f.degree());
  out.terms.resize(static_cast<std::size_t>(std::max(deg, 0)));
  for (int k = 1; k <= deg; ++k) {
    const double factor = 1 - std::pow(static_cast<double>(k) / n, s);
    const Harmonic h = f.at(k);
    out.terms[static_cast<std::size_t>(k - 1)] = {factor * h.a, factor * h.b};
  }
  return out;
}

TrigPoly fejer_sum(const TrigPoly& f, int n) { return zygmund_sum(f, n, 1.0); }

TrigPoly class_deviation_coeffs(const TrigPoly& phi, const KernelSpec& kernel,
                                int n, double s) {
  if (n < 1) throw ParameterError("Zygmund sum order n must be >= 1");
  if (!(s > 0)) throw ParameterError("Zygmund exponent s must be positive");
  if (kernel.N < std::max(phi.degree(), n))
    throw PreconditionError("kernel truncation N is below max(degree, n)");
  TrigPoly dev = convolve(kernel, phi);
  for (int k = 1; k < n && k <= dev.degree(); ++k) {
    const double factor = std::pow(static_cast<double>(k) / n, s);
    auto& h = dev.terms[static_cast<std::size_t>(k - 1)];
    h.a *= factor;
    h.b *= factor;
  }
  return dev;
}

TrigPoly truncate(const TrigPoly& p, int degree) {
  TrigPoly out = p;
  if (out.degree() > degree)
    out.terms.resize(static_cast<std::size_t>(std::max(degree, 0)));
  return out;
}

}  // namespace zygmund
