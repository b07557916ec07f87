#pragma once

#include <string>

#include "epks/grid.hpp"

namespace epks {

/// Physical and numerical parameters of a run.
///
/// Invariants (checked by `validate()`): 0 < epsilon < 1, 0 < alpha < 2,
/// gamma > 1, 0 < rho_lower < mass_level < rho_upper, 0 < dt_cfl <= 1,
/// t_end >= 0, and a power-of-two point count.
struct ParamSet {
  double epsilon = 0.05;
  double alpha = 1.0;
  double gamma = 2.0;
  double mass_level = 1.0;
  double rho_lower = 0.5;
  double rho_upper = 1.5;
  Grid grid = Grid::torus(2.0 * 3.14159265358979323846, 128);
  double dt_cfl = 0.5;
  double t_end = 1.0;

  void validate() const;

  /// Friction time scale of the w equation: the stiff term relaxes w at rate 1/epsilon^2.
  double friction_rate() const noexcept { return 1.0 / (epsilon * epsilon); }

  /// Initial-layer length used to exclude transients from rate fits.
  double layer_time() const;
};

/// Perturbation state (rho, w) of the rescaled Euler-Poisson system.
struct EPState {
  Field rho;
  Field w;
  double time = 0.0;
};

/// Density of the Keller-Segel limit system.
struct KSState {
  Field sigma;
  double time = 0.0;
};

struct ValidationReport {
  enum class Status { Pass, MeanDefect, RangeViolation, NonFinite };

  Status status = Status::Pass;
  double min_rho = 0.0;
  double max_rho = 0.0;
  /// Quadrature of rho0 - M over the domain.
  double mean_defect = 0.0;
  std::string message;

  bool passed() const noexcept { return status == Status::Pass; }
};

std::string to_string(ValidationReport::Status status);

/// Checks the admissibility conditions on initial data: finite samples,
/// rho_lower < rho0 < rho_upper pointwise and a zero-mean perturbation
/// (within 1e-10 |Omega|).
ValidationReport validate_initial_data(const Field& rho0, const Field& w0, const ParamSet& p);

/// Throws the matching Error when the report did not pass.
void ensure_valid(const ValidationReport& report);

}  // namespace epks
