#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "epks/diagnostics.hpp"
#include "epks/error.hpp"
#include "epks/model.hpp"
#include "epks/spectral.hpp"

namespace epks {

struct KSStepReport {
  double dt_used = 0.0;
  double mass_defect = 0.0;
  double min_sigma = 0.0;
};

/// Velocity spectra of the three Runge-Kutta stages of one step, at times
/// t, t + dt/2 and t + dt.
using StageVelocities = std::array<Spectrum, 3>;

/// dt_cfl * h / max|v|; infinite for a vanishing velocity.
double ks_max_dt(const KSState& state, const ParamSet& p);

/// Conservative pseudo-spectral Kutta RK3 for sigma_t = -(sigma v)_x with the
/// velocity recomputed from the Keller-Segel map at every stage.
class KellerSegelStepper {
 public:
  explicit KellerSegelStepper(const ParamSet& p);

  const ParamSet& params() const noexcept { return p_; }
  double max_dt(std::span<const double> sigma);

  /// Advances in place. Throws CflViolation, VacuumApproach or NonFinite.
  KSStepReport step(std::vector<double>& sigma, double dt, StageVelocities* stages = nullptr);

  /// Spectrum of the Keller-Segel velocity of `sigma`.
  void velocity_spectrum(std::span<const double> sigma, Spectrum& out);
  SpectralOps& ops() noexcept { return ops_; }

 private:
  void rhs(std::span<const double> sigma, std::vector<double>& out, Spectrum* v_spec);

  ParamSet p_;
  SpectralOps ops_;
  std::vector<double> v_, flux_, k0_, ka_, kb_, sa_, sb_;
};

std::pair<KSState, KSStepReport> step_ks(const KSState& state, const ParamSet& p, double dt);

struct KSSample {
  KSState state;
  DiagnosticsRecord diagnostics;
};

struct KSRun {
  std::vector<KSSample> samples;
  bool blow_up = false;
  ErrorCode failure = ErrorCode::InvalidArgument;
  std::string message;
  std::size_t steps = 0;
  double mass_drift = 0.0;
};

/// Same driver contract as `simulate_ep`. A positive `max_step` caps the
/// CFL step (used for reference solutions).
KSRun simulate_ks(const Field& sigma0, const ParamSet& p, const std::vector<double>& sample_times,
                  double max_step = 0.0);

}  // namespace epks
