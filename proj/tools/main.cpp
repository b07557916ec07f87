#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>

#include "epks/characteristics.hpp"
#include "epks/config.hpp"
#include "epks/csv.hpp"
#include "epks/euler_poisson.hpp"
#include "epks/experiments.hpp"
#include "epks/keller_segel.hpp"

using namespace epks;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kBreakdown = 3;
constexpr int kVerdict = 4;

struct CommonFlags {
  std::string config;
  std::string out = ".";
  std::string profile;
  std::string eps;
  std::string initial;
  std::optional<std::size_t> grid;
  std::optional<double> t_end;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "key = value parameter file");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--profile", f.profile, "equilibrium | cosine(a,k) | vacuum-ramp(width,F0[,order]) | bump(a,half_width)");
  cmd->add_option("--initial", f.initial, "two-column CSV (x, value) of initial density; defines the grid");
  cmd->add_option("--eps", f.eps, "comma-separated epsilon list");
  cmd->add_option("--grid", f.grid, "grid points");
  cmd->add_option("--t-end", f.t_end, "final time");
}

ExperimentSpec build_spec(const CommonFlags& f, ExperimentSpec spec) {
  if (!f.config.empty()) load_config(f.config, spec);
  if (!f.profile.empty()) spec.profile = parse_profile(f.profile);
  if (!f.eps.empty()) {
    spec.epsilon_list = parse_number_list(f.eps);
    spec.params.epsilon = spec.epsilon_list.front();
  }
  if (f.grid) {
    const Grid& g = spec.params.grid;
    spec.params.grid = g.is_torus() ? Grid::torus(g.length(), *f.grid, g.left()) : Grid::line(g.left(), g.right(), *f.grid);
  }
  if (f.t_end) spec.params.t_end = *f.t_end;
  if (!f.initial.empty()) attach_initial_csv(spec, f.initial);
  spec.output_dir = f.out;
  spec.validate();
  std::filesystem::create_directories(spec.output_dir);
  return spec;
}

std::string path_in(const ExperimentSpec& spec, const std::string& name) {
  return (std::filesystem::path(spec.output_dir) / name).string();
}

ExperimentSpec torus_defaults() {
  ExperimentSpec s;
  s.params.grid = Grid::torus(2.0 * std::numbers::pi, 128);
  s.profile = parse_profile("cosine(0.3,1)");
  return s;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CflViolation:
    case ErrorCode::RangeBreach:
    case ErrorCode::VacuumApproach:
    case ErrorCode::InversionFailure:
      return kBreakdown;
    default:
      return kValidation;
  }
}

CsvRow sample_header(bool with_w) {
  CsvRow h{"tau", "sup_dev", "l2_dev", "grad_l4"};
  if (with_w) h.push_back("w_l2");
  for (const char* c : {"e_total", "d_total", "mass_defect", "rho_min", "rho_max"}) h.push_back(c);
  return h;
}

CsvRow sample_row(const DiagnosticsRecord& d, bool with_w) {
  CsvRow r{csv_number(d.tau), csv_number(d.sup_dev), csv_number(d.l2_dev), csv_number(d.grad_l4)};
  if (with_w) r.push_back(csv_number(d.w_l2));
  for (double x : {d.e_total, d.d_total, d.mass_defect, d.rho_min, d.rho_max}) r.push_back(csv_number(x));
  return r;
}

int report_run(bool blow_up, const std::string& message, const std::string& path) {
  std::printf("wrote %s\n", path.c_str());
  if (blow_up) {
    std::fprintf(stderr, "solver breakdown: %s\n", message.c_str());
    return kBreakdown;
  }
  return kOk;
}

int cmd_simulate_ep(const CommonFlags& f) {
  const ExperimentSpec spec = build_spec(f, torus_defaults());
  const ParamSet& p = spec.params;
  const Field rho0 = initial_density(spec);
  const double k0 = 2.0 * std::numbers::pi / p.grid.length();
  const double a = spec.w0_amplitude;
  const double left = p.grid.left();
  const Field w0 = Field::sample(p.grid, [=](double x) { return a * std::sin(k0 * (x - left)); });
  const EPRun run = simulate_ep(rho0, w0, p, spec.sample_times());
  std::vector<CsvRow> rows;
  for (const auto& s : run.samples) rows.push_back(sample_row(s.diagnostics, true));
  const std::string path = path_in(spec, "ep_samples.csv");
  write_text(path, to_csv(sample_header(true), rows));
  return report_run(run.blow_up, run.message, path);
}

int cmd_simulate_ks(const CommonFlags& f) {
  const ExperimentSpec spec = build_spec(f, torus_defaults());
  const ParamSet& p = spec.params;
  const Field sigma0 = initial_density(spec);
  const KSRun run = simulate_ks(sigma0, p, spec.sample_times());
  std::vector<CsvRow> rows;
  for (const auto& s : run.samples) rows.push_back(sample_row(s.diagnostics, false));
  const std::string path = path_in(spec, "ks_samples.csv");
  write_text(path, to_csv(sample_header(false), rows));
  return report_run(run.blow_up, run.message, path);
}

ExperimentSpec line_defaults() {
  ExperimentSpec s;
  s.params.grid = Grid::line(-2.0, 3.0, 256);
  s.params.t_end = 5.0;
  s.profile = parse_profile("vacuum-ramp(1,-0.3)");
  return s;
}

int cmd_characteristics(const CommonFlags& f) {
  const ExperimentSpec spec = build_spec(f, line_defaults());
  const ParamSet& p = spec.params;
  const InitialProfile prof = initial_line_profile(spec);
  auto [lo, hi] = prof.support();
  if (!(hi > lo)) {
    lo = p.grid.left();
    hi = p.grid.right();
  }
  const Grid labels_grid = Grid::line(lo, hi, p.grid.points());
  std::vector<double> taus;
  for (int i = 0; 0.5 * i <= p.t_end + 1e-12; ++i) taus.push_back(0.5 * i);

  std::vector<CsvRow> rows;
  for (const auto& r : trajectory_bundle(labels_grid.nodes(), taus, prof)) {
    rows.push_back({csv_number(r.x), csv_number(r.tau), csv_number(r.eta), csv_number(r.sigma), csv_number(r.dx_eta),
                    csv_number(r.velocity)});
  }
  const std::string path = path_in(spec, "trajectories.csv");
  write_text(path, to_csv({"x", "tau", "eta", "sigma", "dx_eta", "velocity"}, rows));
  std::printf("wrote %s\n", path.c_str());

  const auto& vs = prof.vacuum_set();
  if (!vs.empty()) {
    std::vector<CsvRow> vrows;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (double tau : taus) {
        const VacuumReport v = vacuum_interval(tau, prof, i);
        vrows.push_back({std::to_string(i), csv_number(tau), csv_number(v.a), csv_number(v.b), csv_number(v.length),
                         csv_number(v.limit_point)});
      }
    }
    const std::string vpath = path_in(spec, "vacuum_intervals.csv");
    write_text(vpath, to_csv({"interval", "tau", "a", "b", "length", "limit_point"}, vrows));
    std::printf("wrote %s\n", vpath.c_str());
  }
  return kOk;
}

int cmd_spectrum(const CommonFlags& f) {
  ExperimentSpec base;
  base.kind = ExperimentSpec::Kind::SpectrumTable;
  const ExperimentSpec spec = build_spec(f, base);
  const SpectrumTable t = run_spectrum_table(spec);
  const std::string path = path_in(spec, "spectrum.csv");
  write_text(path, to_csv(t.header(), t.csv_rows()));
  std::printf("wrote %s (%zu rows, all stable: %s)\n", path.c_str(), t.rows.size(), t.all_stable ? "yes" : "no");
  return t.all_stable ? kOk : kVerdict;
}

int cmd_sweep(const CommonFlags& f) {
  ExperimentSpec base = torus_defaults();
  base.kind = ExperimentSpec::Kind::EpsilonSweep;
  const ExperimentSpec spec = build_spec(f, base);
  const SweepTable t = run_epsilon_sweep(spec);
  const std::string path = path_in(spec, "sweep.csv");
  write_text(path, to_csv(t.header(), t.csv_rows()));
  std::printf("wrote %s\nstrictly decreasing: %s, final/first error ratio: %.4f\n", path.c_str(),
              t.strictly_decreasing ? "yes" : "no", t.final_ratio);
  for (const auto& r : t.rows) {
    if (!r.ok) std::fprintf(stderr, "epsilon %g failed: %s\n", r.epsilon, r.message.c_str());
  }
  if (!t.reference_ok) {
    std::fprintf(stderr, "reference run failed: %s\n", t.reference_message.c_str());
    return kBreakdown;
  }
  return (t.strictly_decreasing && t.final_ratio <= 0.1) ? kOk : kVerdict;
}

int cmd_vacuum(const CommonFlags& f) {
  ExperimentSpec base = line_defaults();
  base.kind = ExperimentSpec::Kind::VacuumCollapse;
  base.params.grid = Grid::line(-2.0, 3.0, 4096);
  const ExperimentSpec spec = build_spec(f, base);
  const VacuumCollapseReport r = run_vacuum_collapse(spec);
  const std::string path = path_in(spec, "vacuum.csv");
  write_text(path, to_csv(r.header(), r.csv_rows()));
  std::printf("wrote %s\nlength rel err %.3e, growth rel err %.3e, fd rel err (tau<=3) %.3e, gap err %.3f h\n",
              path.c_str(), r.max_length_rel_error, r.max_growth_rel_error, r.max_fd_rel_error, r.max_gap_error_in_h);
  const bool ok = r.max_length_rel_error <= 1e-12 && r.max_growth_rel_error <= 1e-12 && r.max_fd_rel_error <= 0.05 &&
                  r.max_gap_error_in_h <= 1.0;
  return ok ? kOk : kVerdict;
}

int cmd_decay(const CommonFlags& f) {
  ExperimentSpec base = torus_defaults();
  base.kind = ExperimentSpec::Kind::DecayFit;
  base.params.t_end = 5.0;
  base.samples = 51;
  const ExperimentSpec spec = build_spec(f, base);
  const DecayReport r = run_decay_fit(spec);
  const std::string path = path_in(spec, "decay.csv");
  write_text(path, to_csv(r.header(), r.csv_rows()));
  std::printf("wrote %s\n", path.c_str());
  for (const auto& e : r.entries) std::printf("  %-12s rate %.5f r2 %.6f\n", e.series.c_str(), e.rate, e.r2);
  std::printf("KS rate floor %.4f, verdict: %s\n", r.ks_rate_floor, r.passed() ? "pass" : "fail");
  for (const auto& e : r.entries) {
    if (e.status == RateEntry::Status::Failed) return kBreakdown;
  }
  return r.passed() ? kOk : kVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler-Poisson / Keller-Segel large-friction experiments"};
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const CommonFlags&);
  };
  const Entry entries[] = {
      {"simulate-ep", "run the Euler-Poisson solver and write ep_samples.csv", cmd_simulate_ep},
      {"simulate-ks", "run the Keller-Segel solver and write ks_samples.csv", cmd_simulate_ks},
      {"characteristics", "closed-form trajectories on the line", cmd_characteristics},
      {"spectrum", "dispersion table over the epsilon list and wavenumbers", cmd_spectrum},
      {"sweep", "large-friction convergence sweep", cmd_sweep},
      {"vacuum", "vacuum collapse report", cmd_vacuum},
      {"decay", "exponential decay-rate fits", cmd_decay},
  };
  std::vector<CommonFlags> flags(std::size(entries));
  std::vector<CLI::App*> cmds;
  for (std::size_t i = 0; i < std::size(entries); ++i) {
    cmds.push_back(app.add_subcommand(entries[i].name, entries[i].help));
    add_common(cmds.back(), flags[i]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    for (std::size_t i = 0; i < cmds.size(); ++i) {
      if (cmds[i]->parsed()) return entries[i].run(flags[i]);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", std::string(to_string(e.code())).c_str(), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  }
  return kValidation;
}
