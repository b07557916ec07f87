#include "epks/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

#include "epks/characteristics.hpp"
#include "epks/diagnostics.hpp"
#include "epks/euler_poisson.hpp"
#include "epks/keller_segel.hpp"
#include "epks/spectrum.hpp"

namespace epks {

namespace {

Field initial_w(const ExperimentSpec& spec) {
  const Grid& g = spec.params.grid;
  const double k0 = 2.0 * std::numbers::pi / g.length();
  const double a = spec.w0_amplitude;
  const double left = g.left();
  return Field::sample(g, [=](double x) { return a * std::sin(k0 * (x - left)); });
}

double l2_gap(const Field& a, const Field& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.grid().weight(i) * (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Field difference(const Field& a, const Field& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return Field(a.grid(), std::move(d));
}

std::string_view status_name(RateEntry::Status s) {
  switch (s) {
    case RateEntry::Status::Fitted: return "fitted";
    case RateEntry::Status::ZeroSignal: return "ZeroSignal";
    case RateEntry::Status::Failed: return "failed";
  }
  return "unknown";
}

RateEntry fit_series(std::string name, const std::vector<std::pair<double, double>>& series, double t1, double t2,
                     double zero_level) {
  RateEntry e;
  e.series = std::move(name);
  double peak = 0.0;
  for (const auto& [t, y] : series) peak = std::max(peak, std::abs(y));
  if (peak <= zero_level) {
    e.status = RateEntry::Status::ZeroSignal;
    return e;
  }
  try {
    const RateFit f = fit_exponential_rate(series, t1, t2);
    e.rate = f.rate;
    e.r2 = f.r2;
    e.samples = f.samples;
  } catch (const Error& err) {
    e.status = RateEntry::Status::Failed;
    e.message = err.what();
  }
  return e;
}

RateEntry failed_entry(std::string name, const std::string& message) {
  RateEntry e;
  e.series = std::move(name);
  e.status = RateEntry::Status::Failed;
  e.message = message;
  return e;
}

}  // namespace

void ExperimentSpec::validate() const {
  params.validate();
  for (std::size_t i = 0; i < epsilon_list.size(); ++i) {
    const double e = epsilon_list[i];
    if (!(e > 0.0 && e < 1.0)) throw Error(ErrorCode::InvalidArgument, "epsilon_list entries must lie in (0,1)");
    if (i > 0 && !(e < epsilon_list[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "epsilon_list must be strictly decreasing");
    }
  }
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  for (double k : wavenumbers) {
    if (!(k >= 0.0) || !std::isfinite(k)) throw Error(ErrorCode::InvalidArgument, "wavenumbers must be >= 0");
  }
}

std::vector<double> ExperimentSpec::sample_times() const {
  if (params.t_end == 0.0) return {0.0};
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) t[static_cast<std::size_t>(j)] = params.t_end * j / (samples - 1);
  t.back() = params.t_end;
  return t;
}

void attach_initial_csv(ExperimentSpec& spec, const std::string& path) {
  const SampleColumns c = read_two_column_csv(path);
  const std::size_t n = c.x.size();
  if (n < 4) throw Error(ErrorCode::InvalidArgument, path + ": need at least 4 samples");
  const double h = (c.x.back() - c.x.front()) / static_cast<double>(n - 1);
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, path + ": x must increase");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(c.x[i] - (c.x.front() + h * static_cast<double>(i))) > 1e-9 * std::max(1.0, std::abs(c.x[i]))) {
      throw Error(ErrorCode::InvalidArgument, path + ": x is not uniformly spaced");
    }
  }
  spec.params.grid = spec.params.grid.is_torus() ? Grid::torus(h * static_cast<double>(n), n, c.x.front())
                                                 : Grid::line(c.x.front(), c.x.back(), n);
  spec.initial_values = c.value;
}

Field initial_density(const ExperimentSpec& spec) {
  const Grid& g = spec.params.grid;
  if (spec.initial_values.empty()) return torus_profile(spec.profile, g, spec.params.mass_level);
  if (!g.is_torus()) throw Error(ErrorCode::NotTorus, "initial density requires a torus grid");
  if (spec.initial_values.size() != g.points()) {
    throw Error(ErrorCode::InvalidArgument, "initial samples do not match the grid");
  }
  return Field(g, spec.initial_values);
}

InitialProfile initial_line_profile(const ExperimentSpec& spec) {
  const Grid& g = spec.params.grid;
  if (spec.initial_values.empty()) return line_profile(spec.profile, spec.params.mass_level);
  if (g.is_torus()) throw Error(ErrorCode::NotLine, "initial profile requires a line grid");
  if (spec.initial_values.size() != g.points()) {
    throw Error(ErrorCode::InvalidArgument, "initial samples do not match the grid");
  }
  return InitialProfile::from_samples(Field(g, spec.initial_values), spec.params.mass_level);
}

std::string to_string(ExperimentSpec::Kind kind) {
  switch (kind) {
    case ExperimentSpec::Kind::EpsilonSweep: return "EpsilonSweep";
    case ExperimentSpec::Kind::VacuumCollapse: return "VacuumCollapse";
    case ExperimentSpec::Kind::DecayFit: return "DecayFit";
    case ExperimentSpec::Kind::SpectrumTable: return "SpectrumTable";
    case ExperimentSpec::Kind::SingleRun: return "SingleRun";
  }
  return "unknown";
}

CsvRow SweepTable::header() const {
  return {"epsilon", "status", "sup_l2_error", "final_h2_error", "sup_w_l2", "layer_w_l2", "steps"};
}

std::vector<CsvRow> SweepTable::csv_rows() const {
  std::vector<CsvRow> out;
  for (const auto& r : rows) {
    out.push_back({csv_number(r.epsilon), r.ok ? "ok" : std::string(to_string(r.failure)), csv_number(r.sup_l2_error),
                   csv_number(r.final_h2_error), csv_number(r.sup_w_l2), csv_number(r.layer_w_l2),
                   std::to_string(r.steps)});
  }
  return out;
}

SweepTable run_epsilon_sweep(const ExperimentSpec& spec) {
  spec.validate();
  const ParamSet& p = spec.params;
  const Field rho0 = initial_density(spec);
  const Field w0 = initial_w(spec);
  const std::vector<double> times = spec.sample_times();

  SweepTable table;
  ParamSet ref_params = p;
  ref_params.dt_cfl = std::min(p.dt_cfl, 0.1);
  const KSRun ref = simulate_ks(rho0, ref_params, times);
  if (ref.blow_up) {
    table.reference_ok = false;
    table.reference_message = ref.message;
  }

  auto member = [&](double eps) {
    SweepRow row;
    row.epsilon = eps;
    try {
      ParamSet pe = p;
      pe.epsilon = eps;
      const EPRun run = simulate_ep(rho0, w0, pe, times);
      row.steps = run.steps;
      if (run.blow_up || !table.reference_ok) {
        row.ok = false;
        row.failure = run.blow_up ? run.failure : ErrorCode::NonFinite;
        row.message = run.blow_up ? run.message : "reference run failed";
        return row;
      }
      const double layer = 5.0 * std::pow(eps, 2.0 - p.alpha);
      for (std::size_t j = 0; j < run.samples.size(); ++j) {
        const EPState& s = run.samples[j].state;
        const Field& sigma = ref.samples[j].state.sigma;
        row.sup_l2_error = std::max(row.sup_l2_error, l2_gap(s.rho, sigma));
        const double wn = norms(s.w).l2;
        row.sup_w_l2 = std::max(row.sup_w_l2, wn);
        if (s.time <= layer) row.layer_w_l2 = std::max(row.layer_w_l2, wn);
      }
      row.final_h2_error = norms(difference(run.samples.back().state.rho, ref.samples.back().state.sigma)).h2;
    } catch (const Error& e) {
      row.ok = false;
      row.failure = e.code();
      row.message = e.what();
    }
    return row;
  };

  std::vector<std::future<SweepRow>> futures;
  for (double eps : spec.epsilon_list) futures.push_back(std::async(std::launch::async, member, eps));
  for (auto& f : futures) table.rows.push_back(f.get());

  table.strictly_decreasing = !table.rows.empty();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (!table.rows[i].ok) table.strictly_decreasing = false;
    if (i > 0 && !(table.rows[i].sup_l2_error < table.rows[i - 1].sup_l2_error)) table.strictly_decreasing = false;
  }
  if (!table.rows.empty() && table.rows.front().sup_l2_error > 0.0) {
    table.final_ratio = table.rows.back().sup_l2_error / table.rows.front().sup_l2_error;
  }
  return table;
}

CsvRow VacuumCollapseReport::header() const {
  return {"tau",          "a",           "b",           "length",      "length_exact",
          "limit_point",  "limit_exact", "growth_along", "growth_exact", "fd_gradient",
          "fd_relative_error", "reconstructed_gap", "gap_error_in_h"};
}

std::vector<CsvRow> VacuumCollapseReport::csv_rows() const {
  std::vector<CsvRow> out;
  for (const auto& r : rows) {
    out.push_back({csv_number(r.tau), csv_number(r.a), csv_number(r.b), csv_number(r.length),
                   csv_number(r.length_exact), csv_number(r.limit_point), csv_number(r.limit_exact),
                   csv_number(r.growth_along), csv_number(r.growth_exact), csv_number(r.fd_gradient),
                   csv_number(r.fd_relative_error), csv_number(r.reconstructed_gap), csv_number(r.gap_error_in_h)});
  }
  return out;
}

VacuumCollapseReport run_vacuum_collapse(const ExperimentSpec& spec) {
  spec.validate();
  const double M = spec.params.mass_level;
  const InitialProfile prof = initial_line_profile(spec);
  vacuum_interval(0.0, prof);
  const VacuumSet v = prof.vacuum_set().front();
  const std::size_t n = spec.params.grid.points();

  int edge_order = 0;
  double edge_derivative = 0.0;
  for (int j = 1; j <= 3 && edge_order == 0; ++j) {
    const double d = prof.derivative(v.left, j, InitialProfile::Side::Left);
    if (std::abs(d) > 1e-10 * std::max(1.0, M)) {
      edge_order = j;
      edge_derivative = d;
    }
  }

  const auto [s_left, s_right] = prof.support();
  const Grid gap_grid = Grid::line(s_left, s_right, n);
  const double h = gap_grid.spacing();

  VacuumCollapseReport rep;
  const auto count = static_cast<int>(std::llround(spec.params.t_end / 0.5));
  for (int i = 0; i <= count; ++i) {
    const double tau = 0.5 * i;
    const VacuumReport vr = vacuum_interval(tau, prof);
    VacuumRow r;
    r.tau = tau;
    r.a = vr.a;
    r.b = vr.b;
    r.length = vr.length;
    r.length_exact = (v.right - v.left) * std::exp(-M * tau);
    r.limit_point = vr.limit_point;
    r.limit_exact = v.left + prof.cumulative(v.left) / M;
    if (edge_order > 0) {
      r.growth_along = derivative_along(v.left, edge_order, tau, prof) / edge_derivative;
      r.growth_exact = std::exp((edge_order + 1) * M * tau);
    }
    if (edge_order == 1) {
      const double window = vr.a - trajectory_position(v.left - 0.01 * (v.right - v.left), tau, prof);
      r.fd_gradient = reconstructed_edge_gradient(tau, prof, window, n);
      const double exact = derivative_along(v.left, 1, tau, prof);
      r.fd_relative_error = std::abs(r.fd_gradient - exact) / std::abs(exact);
    } else {
      r.fd_gradient = std::nan("");
      r.fd_relative_error = std::nan("");
    }
    const KSState s = reconstruct_eulerian(tau, prof, gap_grid);
    std::size_t zeros = 0;
    for (double x : s.sigma.values()) zeros += (x == 0.0);
    r.reconstructed_gap = static_cast<double>(zeros) * h;
    r.gap_error_in_h = std::abs(r.reconstructed_gap - vr.length) / h;

    rep.max_length_rel_error = std::max(rep.max_length_rel_error, std::abs(r.length / r.length_exact - 1.0));
    if (edge_order > 0) {
      rep.max_growth_rel_error = std::max(rep.max_growth_rel_error, std::abs(r.growth_along / r.growth_exact - 1.0));
    }
    if (edge_order == 1 && tau <= rep.fd_horizon) {
      rep.max_fd_rel_error = std::max(rep.max_fd_rel_error, r.fd_relative_error);
    }
    rep.max_gap_error_in_h = std::max(rep.max_gap_error_in_h, r.gap_error_in_h);
    rep.rows.push_back(r);
  }
  return rep;
}

CsvRow DecayReport::header() const { return {"series", "status", "rate", "r2", "samples"}; }

std::vector<CsvRow> DecayReport::csv_rows() const {
  std::vector<CsvRow> out;
  for (const auto& e : entries) {
    out.push_back({e.series, std::string(status_name(e.status)), csv_number(e.rate), csv_number(e.r2),
                   std::to_string(e.samples)});
  }
  return out;
}

DecayReport run_decay_fit(const ExperimentSpec& spec) {
  spec.validate();
  const ParamSet& p = spec.params;
  const Field rho0 = initial_density(spec);
  const Field w0 = initial_w(spec);
  const std::vector<double> times = spec.sample_times();

  DecayReport rep;
  rep.fit_start = spec.fit_start < 0.0 ? p.layer_time() : spec.fit_start;
  rep.ks_rate_floor = 0.9 * std::min(rho0.min(), p.mass_level);
  const double t_end = p.t_end;

  const EPRun ep = simulate_ep(rho0, w0, p, times);
  if (ep.blow_up) {
    for (const char* name : {"ep_sup_dev", "ep_grad_l4", "ep_e_total"}) rep.entries.push_back(failed_entry(name, ep.message));
  } else {
    std::vector<std::pair<double, double>> sup, grad, energy;
    for (const auto& s : ep.samples) {
      sup.emplace_back(s.diagnostics.tau, s.diagnostics.sup_dev);
      grad.emplace_back(s.diagnostics.tau, s.diagnostics.grad_l4);
      energy.emplace_back(s.diagnostics.tau, s.diagnostics.e_total);
    }
    rep.entries.push_back(fit_series("ep_sup_dev", sup, rep.fit_start, t_end, 1e-12));
    rep.entries.push_back(fit_series("ep_grad_l4", grad, rep.fit_start, t_end, 1e-12));
    rep.entries.push_back(fit_series("ep_e_total", energy, rep.fit_start, t_end, 1e-24));
  }

  const KSRun ks = simulate_ks(rho0, p, times);
  if (ks.blow_up) {
    rep.entries.push_back(failed_entry("ks_sup_dev", ks.message));
  } else {
    std::vector<std::pair<double, double>> sup;
    for (const auto& s : ks.samples) sup.emplace_back(s.diagnostics.tau, s.diagnostics.sup_dev);
    rep.entries.push_back(fit_series("ks_sup_dev", sup, rep.fit_start, t_end, 1e-12));
  }

  rep.zero_signal = std::all_of(rep.entries.begin(), rep.entries.end(),
                                [](const RateEntry& e) { return e.status == RateEntry::Status::ZeroSignal; });
  rep.ep_rates_positive = true;
  rep.ep_fits_tight = true;
  for (std::size_t i = 0; i < 3; ++i) {
    const RateEntry& e = rep.entries[i];
    if (e.status != RateEntry::Status::Fitted || !(e.rate > 0.0)) rep.ep_rates_positive = false;
    if (e.status != RateEntry::Status::Fitted || !(e.r2 >= 0.99)) rep.ep_fits_tight = false;
  }
  const RateEntry& k = rep.entries[3];
  rep.ks_rate_ok = k.status == RateEntry::Status::Fitted && k.rate >= rep.ks_rate_floor;
  return rep;
}

CsvRow SpectrumTable::header() const {
  return {"epsilon", "alpha",   "gamma",   "M",         "k",        "re_slow",
          "im_slow", "re_fast", "im_fast", "abs_ratio", "residual", "stable"};
}

std::vector<CsvRow> SpectrumTable::csv_rows() const {
  std::vector<CsvRow> out;
  for (const auto& r : rows) {
    out.push_back({csv_number(r.epsilon), csv_number(alpha), csv_number(gamma), csv_number(mass_level),
                   csv_number(r.k), csv_number(r.slow_re), csv_number(r.slow_im), csv_number(r.fast_re),
                   csv_number(r.fast_im), csv_number(r.ratio_abs), csv_number(r.residual),
                   r.stable ? "true" : "false"});
  }
  return out;
}

SpectrumTable run_spectrum_table(const ExperimentSpec& spec) {
  spec.validate();
  const ParamSet& p = spec.params;
  SpectrumTable table;
  table.alpha = p.alpha;
  table.gamma = p.gamma;
  table.mass_level = p.mass_level;
  table.all_stable = true;
  for (double eps : spec.epsilon_list) {
    for (double k : spec.wavenumbers) {
      const DispersionQuery q{eps, p.alpha, p.gamma, p.mass_level, k};
      const ModePair m = dispersion_roots(q);
      SpectrumRow r;
      r.epsilon = eps;
      r.k = k;
      r.slow_re = m.lambda_slow.real();
      r.slow_im = m.lambda_slow.imag();
      r.fast_re = m.lambda_fast.real();
      r.fast_im = m.lambda_fast.imag();
      r.ratio_abs = std::abs(m.amplitude_ratio);
      r.residual = std::max(dispersion_residual(q, m.lambda_slow), dispersion_residual(q, m.lambda_fast));
      r.stable = r.slow_re < 0.0 && r.fast_re < 0.0;
      table.all_stable = table.all_stable && r.stable;
      table.rows.push_back(r);
    }
  }
  return table;
}

}  // namespace epks
