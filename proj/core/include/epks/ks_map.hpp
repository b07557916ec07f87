#pragma once

#include "epks/grid.hpp"
#include "epks/spectral.hpp"

namespace epks {

/// Transport velocity induced by a density through the Keller-Segel map,
/// v = -d/dx (-d^2/dx^2)^{-1} (rho - M), so that dv/dx = rho - M.
struct KSVelocity {
  Field v;
  /// Amount removed from the source before inversion (mean(rho) - M on a
  /// torus; the total integral of rho - M on a line).
  double source_mean_defect = 0.0;
};

/// Periodic inversion by Fourier division. The k = 0 mode of the source is
/// projected out and reported; the Nyquist mode is dropped.
KSVelocity ks_map_torus(const Field& rho, double mass_level);
/// Same, reusing caller-owned spectral scratch space.
KSVelocity ks_map_torus(const Field& rho, double mass_level, SpectralOps& ops);

/// Running trapezoid integral of sigma - M from the left end of a line grid.
/// Requires the total integral to vanish within 1e-8 |Omega|.
KSVelocity ks_map_line(const Field& sigma, double mass_level);

}  // namespace epks
