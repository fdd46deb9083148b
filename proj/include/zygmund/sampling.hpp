#pragma once

// Uniform-grid samples of periodic functions and the real DFT used to move
// between samples and coefficients.

#include <complex>
#include <span>
#include <vector>

#include "zygmund/trig_poly.hpp"

namespace zygmund {

/// Values at t_j = 2 pi j / M, j = 0..M-1; M is a power of two.
struct SampledFunction {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
};

bool is_power_of_two(std::size_t m) noexcept;
/// Smallest power of two >= m (and >= 1).
std::size_t next_power_of_two(std::size_t m) noexcept;

/// Samples p on M nodes; throws PreconditionError unless M is a power of two
/// with M >= 2 degree + 2 (otherwise harmonics alias).
SampledFunction sample(const TrigPoly& p, std::size_t M);

/// Recovers harmonics 0..degree of a sampled trigonometric polynomial.
TrigPoly coefficients_from_samples(const SampledFunction& f, int degree);

/// X_m = sum_j x_j exp(-2 pi i j m / M) for m = 0..M/2.
std::vector<std::complex<double>> real_dft(std::span<const double> x);

}  // namespace zygmund
