#pragma once

#include <span>
#include <utility>
#include <vector>

#include "epks/model.hpp"

namespace epks {

/// Monitored quantities of one sample. Energies and dissipations are the
/// discrete 1D functionals; H^s norms use ||f||^2 = sum_{j<=s} ||d^j f||^2.
struct DiagnosticsRecord {
  double tau = 0.0;
  double e0 = 0.0;
  double e1 = 0.0;
  double e_total = 0.0;
  double d0 = 0.0;
  double d1 = 0.0;
  double d_total = 0.0;
  double sup_dev = 0.0;   ///< ||rho - M||_inf
  double grad_l4 = 0.0;   ///< ||d_x rho||_{L^4}
  double l2_dev = 0.0;    ///< ||rho - M||_{L^2}
  double h2_dev = 0.0;    ///< ||rho - M||_{H^2}
  double w_l2 = 0.0;      ///< ||eps^{alpha/2} w||_{L^2}
  double mass = 0.0;
  double mass_defect = 0.0;  ///< mass - M |Omega|
  double rho_min = 0.0;
  double rho_max = 0.0;
};

struct Norms {
  double l2 = 0.0;
  double sup = 0.0;
  double l4_of_gradient = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
};

/// Spectral derivatives on a torus, second-order central differences on a line.
Norms norms(const Field& f);

double energy_e0(const EPState& state, const ParamSet& p);
double energy_e1(const EPState& state, const ParamSet& p, int max_order = 2);
double dissipation_d0(const EPState& state, const ParamSet& p);
double dissipation_d1(const EPState& state, const ParamSet& p, int max_order = 2);
double dissipation_total(const EPState& state, const ParamSet& p, int max_order = 2);

/// Constant c with e0 >= c (eps^alpha ||w||^2 + ||rho - M||^2), evaluated
/// from the sampled density range.
double e0_coercivity_constant(const EPState& state, const ParamSet& p);
/// Constant c with d_total >= c e_total, from pointwise comparison of the
/// integrands over the sampled density range.
double dissipation_coercivity_constant(const EPState& state, const ParamSet& p);

DiagnosticsRecord compute_diagnostics(const EPState& state, const ParamSet& p, int max_order = 2);

struct RateFit {
  double rate = 0.0;  ///< minus the least-squares slope of log y against tau
  double r2 = 0.0;
  std::size_t samples = 0;
};

/// Least-squares exponential rate over samples with tau in [t1, t2].
RateFit fit_exponential_rate(std::span<const std::pair<double, double>> series, double t1, double t2);

}  // namespace epks
