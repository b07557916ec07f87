#include "epks/keller_segel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace epks {

namespace {

double total_mass(std::span<const double> sigma, const Grid& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) s += g.weight(i) * sigma[i];
  return s;
}

}  // namespace

KellerSegelStepper::KellerSegelStepper(const ParamSet& p) : p_(p), ops_(p.grid) {
  p_.validate();
  for (auto* buf : {&v_, &flux_, &k0_, &ka_, &kb_, &sa_, &sb_}) buf->assign(p.grid.points(), 0.0);
}

void KellerSegelStepper::velocity_spectrum(std::span<const double> sigma, Spectrum& c) {
  ops_.forward(sigma, c);
  c[0] = 0.0;
  const std::size_t nyquist = ops_.points() / 2;
  c[nyquist] = 0.0;
  for (std::size_t j = 1; j < nyquist; ++j) c[j] /= std::complex<double>(0.0, ops_.wavenumber(j));
}

double KellerSegelStepper::max_dt(std::span<const double> sigma) {
  Spectrum c;
  velocity_spectrum(sigma, c);
  ops_.inverse(c, v_);
  double vmax = 0.0;
  for (double x : v_) vmax = std::max(vmax, std::abs(x));
  if (vmax == 0.0) return std::numeric_limits<double>::infinity();
  return p_.dt_cfl * p_.grid.spacing() / vmax;
}

void KellerSegelStepper::rhs(std::span<const double> sigma, std::vector<double>& out, Spectrum* v_spec) {
  Spectrum c;
  velocity_spectrum(sigma, c);
  if (v_spec) *v_spec = c;
  ops_.inverse(c, v_);
  for (std::size_t i = 0; i < sigma.size(); ++i) flux_[i] = sigma[i] * v_[i];
  ops_.derivative(flux_, 1, true, out);
  for (auto& x : out) x = -x;
}

KSStepReport KellerSegelStepper::step(std::vector<double>& sigma, double dt, StageVelocities* stages) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");
  const double limit = max_dt(sigma);
  if (dt > limit * (1.0 + 1e-12)) {
    throw Error(ErrorCode::CflViolation, "dt=" + std::to_string(dt) + " exceeds stable limit " + std::to_string(limit));
  }
  const double mass_before = total_mass(sigma, p_.grid);
  const std::size_t n = sigma.size();

  rhs(sigma, k0_, stages ? &(*stages)[0] : nullptr);
  for (std::size_t i = 0; i < n; ++i) sa_[i] = sigma[i] + 0.5 * dt * k0_[i];
  rhs(sa_, ka_, stages ? &(*stages)[1] : nullptr);
  for (std::size_t i = 0; i < n; ++i) sb_[i] = sigma[i] + dt * (2.0 * ka_[i] - k0_[i]);
  rhs(sb_, kb_, stages ? &(*stages)[2] : nullptr);
  for (std::size_t i = 0; i < n; ++i) sigma[i] += dt * (k0_[i] + 4.0 * ka_[i] + kb_[i]) / 6.0;

  double smin = std::numeric_limits<double>::infinity();
  for (double s : sigma) {
    if (!std::isfinite(s) || std::abs(s) > 1e12) throw Error(ErrorCode::NonFinite, "density left the finite range");
    smin = std::min(smin, s);
  }
  if (smin < 1e-6 * p_.mass_level) {
    throw Error(ErrorCode::VacuumApproach,
                "min sigma " + std::to_string(smin) + " is near vacuum; use the characteristic solver");
  }
  return {dt, total_mass(sigma, p_.grid) - mass_before, smin};
}

double ks_max_dt(const KSState& s, const ParamSet& p) {
  KellerSegelStepper stepper(p);
  return stepper.max_dt(s.sigma.values());
}

std::pair<KSState, KSStepReport> step_ks(const KSState& s, const ParamSet& p, double dt) {
  KellerSegelStepper stepper(p);
  std::vector<double> sigma(s.sigma.values().begin(), s.sigma.values().end());
  const KSStepReport report = stepper.step(sigma, dt);
  return {KSState{Field(p.grid, std::move(sigma)), s.time + dt}, report};
}

KSRun simulate_ks(const Field& sigma0, const ParamSet& p, const std::vector<double>& sample_times, double max_step) {
  p.validate();
  if (!sigma0.grid().is_torus()) throw Error(ErrorCode::NotTorus, "the Eulerian KS solver runs on a torus");
  const ValidationReport vr = validate_initial_data(sigma0, Field::constant(p.grid, 0.0), p);
  ensure_valid(vr);
  if (!std::is_sorted(sample_times.begin(), sample_times.end()) ||
      (!sample_times.empty() && sample_times.front() < 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sample times must be sorted and non-negative");
  }

  KellerSegelStepper stepper(p);
  std::vector<double> sigma(sigma0.values().begin(), sigma0.values().end());
  const Field zero = Field::constant(p.grid, 0.0);
  const double mass0 = total_mass(sigma, p.grid);
  double t = 0.0;
  KSRun run;
  auto record = [&](double tau) {
    KSState s{Field(p.grid, sigma), tau};
    DiagnosticsRecord d = compute_diagnostics(EPState{s.sigma, zero, tau}, p);
    run.samples.push_back({std::move(s), d});
  };

  try {
    for (double target : sample_times) {
      while (t < target) {
        double limit = stepper.max_dt(sigma);
        if (max_step > 0.0) limit = std::min(limit, max_step);
        const double remaining = target - t;
        const double pieces = std::isfinite(limit) ? std::ceil(remaining / limit) : 1.0;
        const double dt = remaining / pieces;
        stepper.step(sigma, dt);
        t = (pieces <= 1.0) ? target : t + dt;
        ++run.steps;
        run.mass_drift = std::max(run.mass_drift, std::abs(total_mass(sigma, p.grid) - mass0));
      }
      record(target);
    }
  } catch (const Error& e) {
    run.blow_up = true;
    run.failure = e.code();
    run.message = e.what();
  }
  return run;
}

}  // namespace epks
