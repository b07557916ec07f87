#include "epks/euler_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "epks/exponential.hpp"
#include "epks/ks_map.hpp"

namespace epks {

namespace {

constexpr double kBlowUp = 1e12;

double total_mass(std::span<const double> rho, const Grid& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) s += g.weight(i) * rho[i];
  return s;
}

void check_state(std::span<const double> rho, std::span<const double> w, const ParamSet& p) {
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!std::isfinite(rho[i]) || !std::isfinite(w[i]) || std::abs(rho[i]) > kBlowUp || std::abs(w[i]) > kBlowUp) {
      throw Error(ErrorCode::NonFinite, "state left the finite range at node " + std::to_string(i));
    }
  }
  const auto [lo, hi] = std::minmax_element(rho.begin(), rho.end());
  if (*lo < 0.5 * p.rho_lower || *hi > 2.0 * p.rho_upper) {
    std::ostringstream msg;
    msg << "density range [" << *lo << ", " << *hi << "] left [" << 0.5 * p.rho_lower << ", " << 2.0 * p.rho_upper
        << "]";
    throw Error(ErrorCode::RangeBreach, msg.str());
  }
}

}  // namespace

EulerPoissonStepper::EulerPoissonStepper(const ParamSet& p) : p_(p), ops_(p.grid) {
  p_.validate();
  const std::size_t n = p.grid.points();
  for (auto* buf : {&v_, &flux_, &enthalpy_, &dx_w_, &dx_h_, &n0_rho_, &n0_w_, &na_rho_, &na_w_, &nb_rho_, &nb_w_,
                    &a_rho_, &a_w_, &b_rho_, &b_w_}) {
    buf->assign(n, 0.0);
  }
}

void EulerPoissonStepper::velocity(std::span<const double> rho, std::vector<double>& v) {
  Spectrum c;
  ops_.forward(rho, c);
  c[0] = 0.0;
  const std::size_t nyquist = ops_.points() / 2;
  c[nyquist] = 0.0;
  for (std::size_t j = 1; j < nyquist; ++j) c[j] /= std::complex<double>(0.0, ops_.wavenumber(j));
  ops_.inverse(c, v);
}

double EulerPoissonStepper::max_dt(std::span<const double> rho, std::span<const double> w) {
  velocity(rho, v_);
  const double eps = p_.epsilon;
  const double ew = std::pow(eps, p_.alpha - 1.0);
  double transport = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) transport = std::max(transport, std::abs(v_[i] + ew * w[i]));
  const double rho_max = *std::max_element(rho.begin(), rho.end());
  const double sound = std::pow(eps, 0.5 * p_.alpha - 1.0) * std::sqrt(p_.gamma * std::pow(rho_max, p_.gamma - 1.0));
  const double diffusion = std::pow(eps, p_.alpha) * p_.gamma * std::pow(rho_max, p_.gamma - 1.0);
  const double h = p_.grid.spacing();
  return p_.dt_cfl * std::min(h / (transport + sound), h * h / (2.0 * diffusion));
}

// Explicit part of
//   rho_t = -d_x( rho (eps^{alpha-1} w + v) )
//   w_t   = -(1/eps) u w_x - (1/eps) p_x / rho - eps^{1-alpha} v_t - eps^{-alpha} u (rho - M)   [- w / eps^2]
// with v_t = -(F - mean F), F the continuity flux.
void EulerPoissonStepper::rhs(std::span<const double> rho, std::span<const double> w, std::vector<double>& n_rho,
                              std::vector<double>& n_w) {
  const double eps = p_.epsilon;
  const double M = p_.mass_level;
  const double g = p_.gamma;
  const double ew = std::pow(eps, p_.alpha - 1.0);
  const double ea = std::pow(eps, p_.alpha);
  const std::size_t n = rho.size();

  velocity(rho, v_);
  for (std::size_t i = 0; i < n; ++i) {
    flux_[i] = rho[i] * (ew * w[i] + v_[i]);
    enthalpy_[i] = g / (g - 1.0) * std::pow(rho[i], g - 1.0);
  }
  ops_.derivative(flux_, 1, true, n_rho);
  for (auto& x : n_rho) x = -x;

  const double flux_mean = mean(flux_);
  ops_.derivative(w, 1, true, dx_w_);
  ops_.derivative(enthalpy_, 1, true, dx_h_);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = eps * v_[i] + ea * w[i];
    const double dv_dt = -(flux_[i] - flux_mean);
    n_w[i] = -u * dx_w_[i] / eps - dx_h_[i] / eps - dv_dt / ew - u * (rho[i] - M) / ea;
  }
}

EPStepReport EulerPoissonStepper::step(std::vector<double>& rho, std::vector<double>& w, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");
  const double limit = max_dt(rho, w);
  if (dt > limit * (1.0 + 1e-12)) {
    throw Error(ErrorCode::CflViolation, "dt=" + std::to_string(dt) + " exceeds stable limit " + std::to_string(limit));
  }
  const Grid& grid = p_.grid;
  const double mass_before = total_mass(rho, grid);
  const std::size_t n = rho.size();

  const double z = -dt * p_.friction_rate();
  const double e_full = std::exp(z);
  const double e_half = std::exp(0.5 * z);
  const double phi1_half = phi_functions(0.5 * z).phi1;
  const double phi1_full = phi_functions(z).phi1;
  const Etd3Weights bw = etd3_weights(z);
  const Etd3Weights br = etd3_weights(0.0);

  rhs(rho, w, n0_rho_, n0_w_);
  for (std::size_t i = 0; i < n; ++i) {
    a_rho_[i] = rho[i] + 0.5 * dt * n0_rho_[i];
    a_w_[i] = e_half * w[i] + 0.5 * dt * phi1_half * n0_w_[i];
  }
  rhs(a_rho_, a_w_, na_rho_, na_w_);
  for (std::size_t i = 0; i < n; ++i) {
    b_rho_[i] = rho[i] + dt * (2.0 * na_rho_[i] - n0_rho_[i]);
    b_w_[i] = e_full * w[i] + dt * phi1_full * (2.0 * na_w_[i] - n0_w_[i]);
  }
  rhs(b_rho_, b_w_, nb_rho_, nb_w_);
  for (std::size_t i = 0; i < n; ++i) {
    rho[i] += dt * (br.b0 * n0_rho_[i] + br.ba * na_rho_[i] + br.bb * nb_rho_[i]);
    w[i] = e_full * w[i] + dt * (bw.b0 * n0_w_[i] + bw.ba * na_w_[i] + bw.bb * nb_w_[i]);
  }
  check_state(rho, w, p_);

  EPStepReport report;
  report.dt_used = dt;
  report.max_cfl_speed = grid.spacing() * p_.dt_cfl / limit;
  report.friction_factor = e_full;
  report.mass_defect = total_mass(rho, grid) - mass_before;
  return report;
}

Field reconstruct_u(const EPState& s, const ParamSet& p) {
  const KSVelocity kv = ks_map_torus(s.rho, p.mass_level);
  const double eps = p.epsilon;
  const double ea = std::pow(eps, p.alpha);
  std::vector<double> u(s.rho.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = eps * kv.v[i] + ea * s.w[i];
  return Field(s.rho.grid(), std::move(u));
}

double ep_max_dt(const EPState& s, const ParamSet& p) {
  EulerPoissonStepper stepper(p);
  return stepper.max_dt(s.rho.values(), s.w.values());
}

std::pair<EPState, EPStepReport> step_ep(const EPState& s, const ParamSet& p, double dt) {
  EulerPoissonStepper stepper(p);
  std::vector<double> rho(s.rho.values().begin(), s.rho.values().end());
  std::vector<double> w(s.w.values().begin(), s.w.values().end());
  const EPStepReport report = stepper.step(rho, w, dt);
  EPState next{Field(p.grid, std::move(rho)), Field(p.grid, std::move(w)), s.time + dt};
  return {std::move(next), report};
}

EPRun simulate_ep(const Field& rho0, const Field& w0, const ParamSet& p, const std::vector<double>& sample_times) {
  p.validate();
  const ValidationReport vr = validate_initial_data(rho0, w0, p);
  ensure_valid(vr);
  if (!std::is_sorted(sample_times.begin(), sample_times.end()) ||
      (!sample_times.empty() && sample_times.front() < 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "sample times must be sorted and non-negative");
  }

  EulerPoissonStepper stepper(p);
  std::vector<double> rho(rho0.values().begin(), rho0.values().end());
  std::vector<double> w(w0.values().begin(), w0.values().end());
  const double mass0 = total_mass(rho, p.grid);
  double t = 0.0;

  EPRun run;
  auto record = [&](double tau) {
    EPState s{Field(p.grid, rho), Field(p.grid, w), tau};
    DiagnosticsRecord d = compute_diagnostics(s, p);
    run.samples.push_back({std::move(s), d});
  };

  try {
    for (double target : sample_times) {
      while (t < target) {
        // Equal steps up to the sample time, so no sliver step is taken.
        const double remaining = target - t;
        const double pieces = std::ceil(remaining / stepper.max_dt(rho, w));
        const double dt = remaining / pieces;
        stepper.step(rho, w, dt);
        t = (pieces <= 1.0) ? target : t + dt;
        ++run.steps;
        run.mass_drift = std::max(run.mass_drift, std::abs(total_mass(rho, p.grid) - mass0));
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
