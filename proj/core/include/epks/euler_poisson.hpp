#pragma once

#include <string>
#include <utility>
#include <vector>

#include "epks/diagnostics.hpp"
#include "epks/error.hpp"
#include "epks/model.hpp"
#include "epks/spectral.hpp"

namespace epks {

struct EPStepReport {
  double dt_used = 0.0;
  double max_cfl_speed = 0.0;
  /// Exact decay of w over the step from the stiff friction term.
  double friction_factor = 1.0;
  /// Change of the discrete total mass over the step.
  double mass_defect = 0.0;
};

/// u = eps v_rho + eps^alpha w.
Field reconstruct_u(const EPState& state, const ParamSet& p);

/// Largest step accepted by `step_ep`: dt_cfl times the minimum of the
/// transport/acoustic limit h / (max|v + eps^{alpha-1} w| + eps^{alpha/2-1} c)
/// and the relaxed-diffusion limit h^2 / (2 eps^alpha gamma rho^{gamma-1}).
double ep_max_dt(const EPState& state, const ParamSet& p);

/// Exponential Runge-Kutta integrator for the (rho, w) system on a torus.
///
/// The friction -w/eps^2 is integrated exactly through phi-functions
/// (third-order Cox-Matthews scheme); every other term is explicit and
/// evaluated pseudo-spectrally with 2/3-rule dealiasing. The rho update is a
/// flux difference, so the discrete mass is conserved to rounding.
class EulerPoissonStepper {
 public:
  explicit EulerPoissonStepper(const ParamSet& p);

  const ParamSet& params() const noexcept { return p_; }

  /// Advances in place. Throws CflViolation, RangeBreach or NonFinite.
  EPStepReport step(std::vector<double>& rho, std::vector<double>& w, double dt);

  double max_dt(std::span<const double> rho, std::span<const double> w);

 private:
  void rhs(std::span<const double> rho, std::span<const double> w, std::vector<double>& n_rho,
           std::vector<double>& n_w);
  void velocity(std::span<const double> rho, std::vector<double>& v);

  ParamSet p_;
  SpectralOps ops_;
  std::vector<double> v_, flux_, enthalpy_, dx_w_, dx_h_;
  std::vector<double> n0_rho_, n0_w_, na_rho_, na_w_, nb_rho_, nb_w_;
  std::vector<double> a_rho_, a_w_, b_rho_, b_w_;
};

std::pair<EPState, EPStepReport> step_ep(const EPState& state, const ParamSet& p, double dt);

struct EPSample {
  EPState state;
  DiagnosticsRecord diagnostics;
};

struct EPRun {
  std::vector<EPSample> samples;
  bool blow_up = false;
  ErrorCode failure = ErrorCode::InvalidArgument;  ///< meaningful only when blow_up
  std::string message;
  std::size_t steps = 0;
  double mass_drift = 0.0;  ///< max |mass(tau) - mass(0)| over the run
};

/// Drives the stepper to each sample time exactly and records diagnostics.
/// Throws if the initial data fail validation; solver breakdown is reported
/// through `blow_up` with the partial trajectory kept.
EPRun simulate_ep(const Field& rho0, const Field& w0, const ParamSet& p, const std::vector<double>& sample_times);

}  // namespace epks
