#include "epks/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "epks/error.hpp"

namespace epks {

namespace {

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// Plan creation is not thread-safe in FFTW; execution through the new-array
// interface is. FFTW_ESTIMATE keeps the chosen algorithm (and hence every
// rounding) identical from run to run.
PlanPair plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<double> r(n);
  std::vector<fftw_complex> c(n / 2 + 1);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p;
  p.r2c = fftw_plan_dft_r2c_1d(static_cast<int>(n), r.data(), c.data(), flags);
  p.c2r = fftw_plan_dft_c2r_1d(static_cast<int>(n), c.data(), r.data(), flags | FFTW_DESTROY_INPUT);
  cache.emplace(n, p);
  return p;
}

}  // namespace

SpectralOps::SpectralOps(const Grid& grid)
    : n_(grid.points()),
      k0_(2.0 * std::numbers::pi / grid.length()),
      origin_(grid.left()),
      real_buf_(grid.points()),
      spec_buf_(grid.points() / 2 + 1) {
  if (!grid.is_torus()) throw Error(ErrorCode::NotTorus, "spectral operators need a periodic grid");
}

void SpectralOps::forward(std::span<const double> values, Spectrum& coeffs) {
  coeffs.resize(modes());
  std::copy(values.begin(), values.end(), real_buf_.begin());
  fftw_execute_dft_r2c(plans_for(n_).r2c, real_buf_.data(), reinterpret_cast<fftw_complex*>(coeffs.data()));
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& c : coeffs) c *= scale;
}

void SpectralOps::inverse(const Spectrum& coeffs, std::span<double> values) {
  std::copy(coeffs.begin(), coeffs.end(), spec_buf_.begin());
  fftw_execute_dft_c2r(plans_for(n_).c2r, reinterpret_cast<fftw_complex*>(spec_buf_.data()), values.data());
}

void SpectralOps::derivative(std::span<const double> values, int order, bool dealias, std::span<double> out) {
  Spectrum c;
  forward(values, c);
  const std::size_t nyquist = n_ / 2;
  const std::size_t cutoff = dealias ? dealias_cutoff() : nyquist;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j > cutoff || (j == nyquist && order % 2 == 1)) {
      c[j] = 0.0;
      continue;
    }
    // (ik)^order = k^order * i^order, with i^order taken exactly.
    static constexpr std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    c[j] *= std::pow(wavenumber(j), order) * i_pow[order % 4];
  }
  inverse(c, out);
}

std::vector<double> SpectralOps::derivative(std::span<const double> values, int order, bool dealias) {
  std::vector<double> out(n_);
  derivative(values, order, dealias, out);
  return out;
}

double SpectralOps::evaluate(const Spectrum& coeffs, double x) const noexcept {
  const double theta = k0_ * (x - origin_);
  const std::complex<double> step = std::polar(1.0, theta);
  std::complex<double> phase = step;
  double sum = coeffs[0].real();
  const std::size_t nyquist = n_ / 2;
  for (std::size_t j = 1; j < coeffs.size(); ++j) {
    const double weight = (j == nyquist) ? 1.0 : 2.0;
    sum += weight * (coeffs[j] * phase).real();
    phase *= step;
  }
  return sum;
}

}  // namespace epks
