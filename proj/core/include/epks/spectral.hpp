#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "epks/grid.hpp"

namespace epks {

using Spectrum = std::vector<std::complex<double>>;

/// Real-to-complex Fourier machinery on a torus grid.
///
/// Coefficients are normalized so that f(x_j) = sum_k c_k e^{i k (x_j - origin)}
/// over the half spectrum plus conjugates. Instances own scratch buffers and
/// are not shared between threads; FFTW plans are cached process-wide.
class SpectralOps {
 public:
  explicit SpectralOps(const Grid& grid);

  std::size_t points() const noexcept { return n_; }
  std::size_t modes() const noexcept { return n_ / 2 + 1; }
  /// Angular wavenumber of half-spectrum index j.
  double wavenumber(std::size_t j) const noexcept { return k0_ * static_cast<double>(j); }
  /// Highest index kept by the 2/3 rule.
  std::size_t dealias_cutoff() const noexcept { return n_ / 3; }

  void forward(std::span<const double> values, Spectrum& coeffs);
  void inverse(const Spectrum& coeffs, std::span<double> values);

  /// order-th derivative; `dealias` zeroes indices above the 2/3 cutoff.
  void derivative(std::span<const double> values, int order, bool dealias, std::span<double> out);
  std::vector<double> derivative(std::span<const double> values, int order, bool dealias = false);

  /// Evaluates the trigonometric interpolant at an arbitrary point.
  double evaluate(const Spectrum& coeffs, double x) const noexcept;

 private:
  std::size_t n_;
  double k0_;
  double origin_;
  std::vector<double> real_buf_;
  Spectrum spec_buf_;
};

}  // namespace epks
