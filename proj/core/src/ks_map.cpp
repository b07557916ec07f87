#include "epks/ks_map.hpp"

#include <cmath>
#include <string>

#include "epks/error.hpp"

namespace epks {

KSVelocity ks_map_torus(const Field& rho, double mass_level) {
  if (!rho.grid().is_torus()) throw Error(ErrorCode::NotTorus, "ks_map_torus needs a periodic grid");
  SpectralOps ops(rho.grid());
  return ks_map_torus(rho, mass_level, ops);
}

KSVelocity ks_map_torus(const Field& rho, double mass_level, SpectralOps& ops) {
  if (!rho.grid().is_torus()) throw Error(ErrorCode::NotTorus, "ks_map_torus needs a periodic grid");
  if (!rho.all_finite()) throw Error(ErrorCode::NonFinite, "density has non-finite samples");

  Spectrum c;
  ops.forward(rho.values(), c);
  const double defect = c[0].real() - mass_level;
  c[0] = 0.0;
  const std::size_t nyquist = ops.points() / 2;
  c[nyquist] = 0.0;
  for (std::size_t j = 1; j < nyquist; ++j) c[j] /= std::complex<double>(0.0, ops.wavenumber(j));

  std::vector<double> v(ops.points());
  ops.inverse(c, v);
  return {Field(rho.grid(), std::move(v)), defect};
}

KSVelocity ks_map_line(const Field& sigma, double mass_level) {
  const Grid& g = sigma.grid();
  if (!g.is_line()) throw Error(ErrorCode::NotLine, "ks_map_line needs a line grid");
  if (!sigma.all_finite()) throw Error(ErrorCode::NonFinite, "density has non-finite samples");

  const double h = g.spacing();
  std::vector<double> v(g.points(), 0.0);
  for (std::size_t i = 1; i < v.size(); ++i) {
    v[i] = v[i - 1] + 0.5 * h * ((sigma[i - 1] - mass_level) + (sigma[i] - mass_level));
  }
  const double total = v.back();
  if (std::abs(total) > 1e-8 * g.length()) {
    throw Error(ErrorCode::NonzeroTotalMass, "integral of sigma - M is " + std::to_string(total));
  }
  return {Field(g, std::move(v)), total};
}

}  // namespace epks
