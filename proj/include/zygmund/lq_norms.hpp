#pragma once

// L_q norms over the full period [0, 2 pi] and best approximation by
// trigonometric polynomials of degree n - 1 in L_q.

#include <cstddef>

#include "zygmund/trig_poly.hpp"

namespace zygmund {

struct NormRequest {
  double q = 2.0;
  std::size_t gridM = 64;  // starting grid, a power of two >= 16
  double tolerance = 1e-10;  // relative change between successive doublings
};

/// (int_0^{2pi} |p(t)|^q dt)^{1/q}, recomputed on doubled grids until two
/// successive values agree to req.tolerance (relative). Even integer q uses
/// the rectangle rule, exact once the grid exceeds q * degree. Other q use
/// the grid to bracket the zeros of p and integrate exactly between them.
/// Throws ConvergenceError after 12 doublings.
double lq_norm(const TrigPoly& p, const NormRequest& req);

/// Parseval: sqrt(2 pi (a0/2)^2 + pi sum (a_k^2 + b_k^2)).
double l2_norm_coeffs(const TrigPoly& p);

double l1_norm(const TrigPoly& p, const NormRequest& req = {1.0});

struct BestApproxResult {
  double value = 0.0;  // ||f - minimizer||_q
  TrigPoly minimizer;  // degree <= n - 1
  int iterations = 0;
  bool converged = false;
};

/// E_n(f)_q = inf over degree-(n-1) polynomials t of ||f - t||_q.
///
/// Iteratively reweighted least squares on a sample grid, started from the
/// Fourier partial sum. Steps are damped by 1/(q-1) for q > 2 (the Newton
/// step) and backtracked until the grid objective decreases. For q that is
/// not an even integer the grid objective only approximates the integral, so
/// the fit is repeated on doubled grids (warm start) until the exact norm of
/// the residual changes by less than 1e-10 (relative). For q = 2 the partial
/// sum is returned directly.
BestApproxResult best_approx(const TrigPoly& f, int n, const NormRequest& req);

}  // namespace zygmund
