#pragma once

// Trigonometric polynomials, the Dirichlet / de la Vallee-Poussin kernels,
// truncated Psi_beta kernels, convolution with them, and the Zygmund means.

#include <span>
#include <vector>

#include "zygmund/psi_classes.hpp"

namespace zygmund {

struct Harmonic {
  double a = 0.0;  // cosine coefficient
  double b = 0.0;  // sine coefficient
};

/// p(t) = a0/2 + sum_{k=1}^{degree} (a_k cos kt + b_k sin kt).
///
/// terms[k-1] holds harmonic k. Trailing zero harmonics are allowed;
/// normalized() strips them.
struct TrigPoly {
  double a0 = 0.0;
  std::vector<Harmonic> terms;

  int degree() const noexcept { return static_cast<int>(terms.size()); }
  /// Harmonic k >= 1, zero beyond the stored degree.
  Harmonic at(int k) const noexcept;
  double operator()(double t) const;
  TrigPoly normalized() const;

  static TrigPoly constant(double value) { return TrigPoly{2 * value, {}}; }
  static TrigPoly cosine(int k, double amplitude = 1.0);
  static TrigPoly sine(int k, double amplitude = 1.0);
};

TrigPoly operator+(const TrigPoly& lhs, const TrigPoly& rhs);
TrigPoly operator-(const TrigPoly& lhs, const TrigPoly& rhs);
TrigPoly operator*(double scale, const TrigPoly& p);

/// Largest absolute coefficient difference, a0 included.
double max_coeff_diff(const TrigPoly& lhs, const TrigPoly& rhs);

double eval_poly(const TrigPoly& p, double t);

/// cos(beta pi / 2) and sin(beta pi / 2), exact when beta is an integer.
struct PhaseShift {
  double cos;
  double sin;
};
PhaseShift phase_shift(double beta);

/// D_k(t) = 1/2 + sum_{nu=1}^k cos(nu t).
TrigPoly dirichlet(int k);
/// sin((k + 1/2) t) / (2 sin(t/2)); the series form is used where
/// |sin(t/2)| < 1e-8.
double dirichlet_closed(int k, double t);

/// V_m = D_m + 2 sum_{k=m+1}^{2m-1} (1 - k/(2m)) cos kt, degree 2m - 1.
TrigPoly vallee_poussin(int m);
/// V_m assembled as (1/m) sum_{k=m}^{2m-1} D_k.
TrigPoly vallee_poussin_averaged(int m);

/// Truncation of Psi_beta(t) = sum_k psi(k) cos(kt - beta pi / 2) at k = N.
struct KernelSpec {
  PsiSpec psi;
  double beta = 0.0;
  int N = 1;
};

struct KernelTail {
  /// Upper bound on sum_{k>N} psi(k); +inf when the series diverges.
  double sum = 0.0;
  /// Upper bound on sqrt(pi sum_{k>N} psi(k)^2), the L2 norm of the tail.
  double l2 = 0.0;
};

struct KernelPoly {
  TrigPoly poly;
  KernelTail tail;
};

/// Upper bound on sum_{k>N} psi(k)^power from direct summation plus an
/// integral bound. Returns +inf for divergent analytic families; throws
/// ConvergenceError for tabulated data whose declared decay cannot bound it.
double psi_tail_sum(const PsiSpec& psi, int N, double power = 1.0);

KernelPoly kernel_poly(const KernelSpec& kernel);

/// (1/pi) int Psi_beta(x - t) phi(t) dt for zero-mean phi. Harmonic k of
/// phi, (alpha, gamma), maps to psi(k) * (alpha cos theta - gamma sin theta,
/// alpha sin theta + gamma cos theta) with theta = beta pi / 2.
TrigPoly convolve(const KernelSpec& kernel, const TrigPoly& phi);

/// Inverse of convolve on the zero-mean part; result has a0 = 0.
TrigPoly psi_beta_derivative(const TrigPoly& f, const KernelSpec& kernel);

/// Z^s_{n-1}(f): harmonic k < n scaled by 1 - (k/n)^s, a0 kept.
TrigPoly zygmund_sum(const TrigPoly& f, int n, double s);
TrigPoly fejer_sum(const TrigPoly& f, int n);

/// f - Z^s_{n-1}(f) for f = Psi_beta * phi, in coefficient form: harmonics
/// k < n of f scaled by (k/n)^s, harmonics k >= n unchanged.
TrigPoly class_deviation_coeffs(const TrigPoly& phi, const KernelSpec& kernel,
                                int n, double s);

/// Truncation to harmonics k <= degree (Fourier partial sum for polynomials).
TrigPoly truncate(const TrigPoly& p, int degree);

}  // namespace zygmund
