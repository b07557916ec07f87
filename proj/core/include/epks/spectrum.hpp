#pragma once

#include <complex>

#include "epks/model.hpp"

namespace epks {

/// Linearization about (M, 0) for the Fourier mode e^{ikx}.
struct DispersionQuery {
  double epsilon = 0.05;
  double alpha = 1.0;
  double gamma = 2.0;
  double mass_level = 1.0;
  double k = 1.0;

  void validate() const;
  static DispersionQuery from(const ParamSet& p, double k);
};

/// Roots of eps^2 l^2 + l + M + gamma M^{gamma-1} eps^alpha k^2 = 0.
struct ModePair {
  std::complex<double> lambda_slow;
  /// -infinity when epsilon = 0 (the quadratic degenerates).
  std::complex<double> lambda_fast;
  /// U/zeta at the slow root; NaN for k = 0.
  std::complex<double> amplitude_ratio;
};

/// Slow root is the continuation of -M from epsilon = 0; computed without
/// cancellation as c/q with q = -(1 + sqrt(1 - 4 eps^2 c))/2.
ModePair dispersion_roots(const DispersionQuery& q);

/// eps^2 l^2 + l + c, scaled by max(1, eps^2 |l|^2).
double dispersion_residual(const DispersionQuery& q, std::complex<double> lambda);

/// Velocity-to-density amplitude ratio of a mode with growth rate lambda:
///   U/zeta = -[eps M (i/k) + eps^{alpha+1} gamma M^{gamma-1} (ik)] / ((1 + eps^2 lambda) M).
/// Throws ZeroWavenumber for k = 0, ResonantDenominator when |1 + eps^2 lambda| < 1e-14.
std::complex<double> amplitude_ratio(const DispersionQuery& q, std::complex<double> lambda);

struct LinearModeCheck {
  double measured_rate = 0.0;   ///< fitted decay rate of |rho_k|
  double predicted_rate = 0.0;  ///< -Re lambda_slow
  double relative_gap = 0.0;
  double r2 = 0.0;
};

/// Runs the nonlinear solver from rho = M + amplitude cos(kx) with w on the
/// slow eigenvector and fits the decay of the k-th Fourier coefficient over
/// tau in [0, horizon]. k must be an integer multiple of the grid's base
/// wavenumber and below the dealiasing cutoff.
LinearModeCheck validate_linear_mode(const ParamSet& p, double k, double amplitude, double horizon = 1.0,
                                     int samples = 21);

}  // namespace epks
