#pragma once

// Lower-bound witness for the class deviation: the calibrated
// de la Vallee-Poussin density phi = alpha0 (V_n - 1/2), its image
// f = Psi_beta * phi, the dual test polynomial and the pairing integral
// between f - Z^s_{n-1} f and that polynomial.

#include "zygmund/lq_norms.hpp"
#include "zygmund/psi_classes.hpp"
#include "zygmund/trig_poly.hpp"

namespace zygmund {

struct WitnessConfig {
  PsiSpec psi;
  MethodParams method;
  int n = 2;  // >= 2
};

struct PairingIntegral {
  double closed_form = 0.0;
  double quadrature = 0.0;
};

struct LowerBound {
  /// alpha0 pi n^{-s} (sum_{k<n} g(k)^q / k)^{1/q}.
  double sum_form = 0.0;
  /// I / ||dual||_{q'}; never exceeds ||f - Z f||_q by Hoelder.
  double holder = 0.0;
};

struct WitnessResult {
  double alpha0 = 0.0;
  TrigPoly phi;
  TrigPoly f;
  TrigPoly dual;
  PairingIntegral pairing;
  double dual_norm = 0.0;            // ||dual||_{q'}
  double lower_bound = 0.0;          // Hoelder quotient I / ||dual||_{q'}
  double lower_bound_sum_form = 0.0;
  double measured_deviation = 0.0;   // ||f - Z^s_{n-1} f||_q
};

/// alpha0(n) = 1 / ||V_n - 1/2||_1, so that ||alpha0 (V_n - 1/2)||_1 = 1.
double calibrate_alpha0(int n, const NormRequest& req = {1.0});

/// f_{alpha0} assembled from its explicit harmonic expansion.
TrigPoly witness_expansion(const PsiSpec& psi, double beta, int n,
                           double alpha0);

/// Builds the full witness. Throws ConsistencyError when the explicit
/// expansion and convolve(kernel, phi) differ by more than 1e-10, or when
/// the two routes to the pairing integral disagree beyond 1e-8 (relative).
WitnessResult build_witness(const WitnessConfig& cfg);

/// sum_{k<n} g(k)^{q-1} k^{-1/q} cos(kt - beta pi / 2).
TrigPoly dual_test_poly(const WitnessConfig& cfg);

PairingIntegral pairing_I(const WitnessConfig& cfg);

LowerBound lower_bound(const WitnessConfig& cfg);

/// int_{-pi}^{pi} a(t) b(t) dt, exact for trigonometric polynomials.
double pairing_quadrature(const TrigPoly& a, const TrigPoly& b,
                          std::size_t min_grid = 1024);

}  // namespace zygmund
