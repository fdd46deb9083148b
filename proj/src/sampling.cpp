#include "zygmund/sampling.hpp"

#include <fftw3.h>

#include <mutex>

#include "zygmund/errors.hpp"

namespace zygmund {

namespace {

// FFTW's planner is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  explicit Plan(fftw_plan plan) : plan_(plan) {}
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

Plan make_r2c(int M, double* in, fftw_complex* out) {
  std::lock_guard lock(planner_mutex());
  return Plan(fftw_plan_dft_r2c_1d(M, in, out, FFTW_ESTIMATE | FFTW_UNALIGNED));
}

Plan make_c2r(int M, fftw_complex* in, double* out) {
  std::lock_guard lock(planner_mutex());
  return Plan(fftw_plan_dft_c2r_1d(M, in, out, FFTW_ESTIMATE | FFTW_UNALIGNED));
}

}  // namespace

bool is_power_of_two(std::size_t m) noexcept {
  return m != 0 && (m & (m - 1)) == 0;
}

std::size_t next_power_of_two(std::size_t m) noexcept {
  std::size_t p = 1;
  while (p < m) p <<= 1;
  return p;
}

SampledFunction sample(const TrigPoly& p, std::size_t M) {
  if (!is_power_of_two(M))
    throw PreconditionError("sample grid size must be a power of two");
  if (M < 2 * static_cast<std::size_t>(p.degree()) + 2)
    throw PreconditionError("sample grid too small: harmonics would alias");

  std::vector<std::complex<double>> spectrum(M / 2 + 1);
  spectrum[0] = p.a0 / 2;
  for (int k = 1; k <= p.degree(); ++k) {
    const Harmonic h = p.at(k);
    spectrum[static_cast<std::size_t>(k)] = {h.a / 2, -h.b / 2};
  }
  SampledFunction out;
  out.values.resize(M);
  if (M == 1) {
    out.values[0] = spectrum[0].real();
    return out;
  }
  const Plan plan =
      make_c2r(static_cast<int>(M),
               reinterpret_cast<fftw_complex*>(spectrum.data()),
               out.values.data());
  plan.execute();
  return out;
}

std::vector<std::complex<double>> real_dft(std::span<const double> x) {
  std::vector<double> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(x.size() / 2 + 1);
  const Plan plan = make_r2c(static_cast<int>(x.size()), in.data(),
                             reinterpret_cast<fftw_complex*>(out.data()));
  plan.execute();
  return out;
}

TrigPoly coefficients_from_samples(const SampledFunction& f, int degree) {
  const std::size_t M = f.size();
  if (!is_power_of_two(M) || M < 2 * static_cast<std::size_t>(degree) + 2)
    throw PreconditionError("grid too small to resolve the requested degree");
  const auto X = real_dft(f.values);
  const double scale = 2.0 / static_cast<double>(M);
  TrigPoly p;
  p.a0 = scale * X[0].real();
  p.terms.resize(static_cast<std::size_t>(degree));
  for (int k = 1; k <= degree; ++k) {
    const auto& c = X[static_cast<std::size_t>(k)];
    p.terms[static_cast<std::size_t>(k - 1)] = {scale * c.real(),
                                                -scale * c.imag()};
  }
  return p;
}

}  // namespace zygmund
