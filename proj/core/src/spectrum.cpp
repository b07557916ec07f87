#include "epks/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "epks/diagnostics.hpp"
#include "epks/error.hpp"
#include "epks/euler_poisson.hpp"
#include "epks/spectral.hpp"

namespace epks {

using cplx = std::complex<double>;

namespace {

double pressure_coefficient(const DispersionQuery& q) {
  const double ea = q.epsilon == 0.0 ? 0.0 : std::pow(q.epsilon, q.alpha);
  return q.mass_level + q.gamma * std::pow(q.mass_level, q.gamma - 1.0) * ea * q.k * q.k;
}

}  // namespace

void DispersionQuery::validate() const {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must lie in [0,1)");
  if (!(alpha > 0.0 && alpha < 2.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0,2)");
  if (!(gamma > 1.0)) throw Error(ErrorCode::InvalidArgument, "gamma must exceed 1");
  if (!(mass_level > 0.0)) throw Error(ErrorCode::InvalidArgument, "mass level must be positive");
  if (!(k >= 0.0) || !std::isfinite(k)) throw Error(ErrorCode::InvalidArgument, "wavenumber must be finite and >= 0");
}

DispersionQuery DispersionQuery::from(const ParamSet& p, double k) {
  return {p.epsilon, p.alpha, p.gamma, p.mass_level, k};
}

ModePair dispersion_roots(const DispersionQuery& q) {
  q.validate();
  const double c = pressure_coefficient(q);
  ModePair out;
  if (q.epsilon == 0.0) {
    out.lambda_slow = -c;
    out.lambda_fast = -std::numeric_limits<double>::infinity();
  } else {
    const double e2 = q.epsilon * q.epsilon;
    const cplx s = std::sqrt(cplx(1.0 - 4.0 * e2 * c, 0.0));
    const cplx qq = -0.5 * (1.0 + s);
    out.lambda_slow = c / qq;
    out.lambda_fast = qq / e2;
  }
  if (q.k > 0.0) {
    out.amplitude_ratio = amplitude_ratio(q, out.lambda_slow);
  } else {
    out.amplitude_ratio = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  }
  return out;
}

double dispersion_residual(const DispersionQuery& q, cplx lambda) {
  const double e2 = q.epsilon * q.epsilon;
  const cplx r = e2 * lambda * lambda + lambda + pressure_coefficient(q);
  return std::abs(r) / std::max(1.0, e2 * std::norm(lambda));
}

cplx amplitude_ratio(const DispersionQuery& q, cplx lambda) {
  q.validate();
  if (q.k == 0.0) throw Error(ErrorCode::ZeroWavenumber, "amplitude ratio is undefined at k = 0");
  const double eps = q.epsilon;
  const double M = q.mass_level;
  const cplx denom = (1.0 + eps * eps * lambda) * M;
  if (std::abs(1.0 + eps * eps * lambda) < 1e-14) {
    throw Error(ErrorCode::ResonantDenominator, "1 + eps^2 lambda vanishes");
  }
  const cplx i(0.0, 1.0);
  const double ea1 = eps == 0.0 ? 0.0 : std::pow(eps, q.alpha + 1.0);
  const cplx numer = eps * M * (i / q.k) + ea1 * q.gamma * std::pow(M, q.gamma - 1.0) * (i * q.k);
  return -numer / denom;
}

LinearModeCheck validate_linear_mode(const ParamSet& p, double k, double amplitude, double horizon, int samples) {
  p.validate();
  if (!p.grid.is_torus()) throw Error(ErrorCode::NotTorus, "linear mode check runs on a torus");
  if (!(amplitude > 0.0) || !(horizon > 0.0) || samples < 5) {
    throw Error(ErrorCode::InvalidArgument, "need positive amplitude and horizon and at least 5 samples");
  }
  const double k0 = 2.0 * std::numbers::pi / p.grid.length();
  const double index_real = k / k0;
  const auto index = static_cast<std::size_t>(std::llround(index_real));
  if (index == 0 || std::abs(index_real - static_cast<double>(index)) > 1e-9 || index > p.grid.points() / 3) {
    throw Error(ErrorCode::InvalidArgument, "wavenumber is not a resolved grid mode");
  }

  const DispersionQuery q = DispersionQuery::from(p, k);
  const cplx lambda = dispersion_roots(q).lambda_slow;
  const double M = p.mass_level;
  const cplx i(0.0, 1.0);
  // From the linearized continuity equation: lambda zeta = -M zeta - i k M eps^{alpha-1} W.
  const cplx w_coef = -(lambda + M) * amplitude / (i * k * M * std::pow(p.epsilon, p.alpha - 1.0));
  const double x0 = p.grid.left();
  const Field rho0 = Field::sample(p.grid, [&](double x) { return M + amplitude * std::cos(k * (x - x0)); });
  const Field w0 = Field::sample(p.grid, [&](double x) { return (w_coef * std::exp(i * k * (x - x0))).real(); });

  std::vector<double> times(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) times[static_cast<std::size_t>(j)] = horizon * j / (samples - 1);
  const EPRun run = simulate_ep(rho0, w0, p, times);
  if (run.blow_up) throw Error(run.failure, run.message);

  SpectralOps ops(p.grid);
  Spectrum c;
  std::vector<std::pair<double, double>> series;
  for (const auto& s : run.samples) {
    ops.forward(s.state.rho.values(), c);
    series.emplace_back(s.state.time, std::abs(c[index]));
  }
  const RateFit fit = fit_exponential_rate(series, 0.0, horizon);
  LinearModeCheck out;
  out.measured_rate = fit.rate;
  out.predicted_rate = -lambda.real();
  out.relative_gap = std::abs(out.measured_rate - out.predicted_rate) / std::abs(out.predicted_rate);
  out.r2 = fit.r2;
  return out;
}

}  // namespace epks
