#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epks/csv.hpp"
#include "epks/error.hpp"
#include "epks/model.hpp"
#include "epks/profiles.hpp"

namespace epks {

struct ExperimentSpec {
  enum class Kind { EpsilonSweep, VacuumCollapse, DecayFit, SpectrumTable, SingleRun };

  Kind kind = Kind::SingleRun;
  ParamSet params;
  /// Strictly decreasing, all in (0,1).
  std::vector<double> epsilon_list{0.2, 0.1, 0.05, 0.025};
  std::vector<double> wavenumbers{0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
  ProfileSpec profile;
  /// Amplitude of w0 = a sin(k0 x); 0 gives well-prepared data.
  double w0_amplitude = 0.0;
  /// Number of output samples over [0, t_end], both ends included.
  int samples = 21;
  /// Start of the rate-fit window; negative selects 10 eps^{2-alpha}.
  double fit_start = -1.0;
  std::string output_dir = ".";
  /// Reserved: every experiment is deterministic.
  std::uint64_t seed = 0;
  /// Sampled initial density replacing `profile` when non-empty; set by
  /// attach_initial_csv together with the matching grid.
  std::vector<double> initial_values;

  void validate() const;
  std::vector<double> sample_times() const;
};

std::string to_string(ExperimentSpec::Kind kind);

/// Loads (x, value) samples with uniform x and rebuilds the grid from them,
/// keeping its kind: a torus of length n h starting at x0, or the line
/// [x0, x_{n-1}]. Throws IoError, ParseError or InvalidArgument.
void attach_initial_csv(ExperimentSpec& spec, const std::string& path);
/// Initial density on the experiment's torus grid.
Field initial_density(const ExperimentSpec& spec);
/// Initial profile on the line.
InitialProfile initial_line_profile(const ExperimentSpec& spec);

struct SweepRow {
  double epsilon = 0.0;
  bool ok = true;
  ErrorCode failure = ErrorCode::InvalidArgument;
  std::string message;
  double sup_l2_error = 0.0;    ///< sup over samples of ||rho_eps - sigma||_{L2}
  double final_h2_error = 0.0;  ///< ||rho_eps - sigma||_{H2} at t_end
  double sup_w_l2 = 0.0;        ///< sup over samples of ||w||_{L2}
  double layer_w_l2 = 0.0;      ///< sup of ||w||_{L2} over tau <= 5 eps^{2-alpha}
  std::size_t steps = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  bool reference_ok = true;
  std::string reference_message;
  bool strictly_decreasing = false;
  /// Last row's sup error over the first row's.
  double final_ratio = 0.0;

  CsvRow header() const;
  std::vector<CsvRow> csv_rows() const;
};

/// One EP run per epsilon (concurrently) against a single KS reference
/// computed at a tight step with sigma0 = rho0.
SweepTable run_epsilon_sweep(const ExperimentSpec& spec);

struct VacuumRow {
  double tau = 0.0;
  double a = 0.0;
  double b = 0.0;
  double length = 0.0;
  double length_exact = 0.0;
  double limit_point = 0.0;
  double limit_exact = 0.0;
  double growth_along = 0.0;  ///< d sigma at the left edge over sigma0'(a0-)
  double growth_exact = 0.0;  ///< e^{2 M tau}
  double fd_gradient = 0.0;
  double fd_relative_error = 0.0;
  double reconstructed_gap = 0.0;
  double gap_error_in_h = 0.0;
};

struct VacuumCollapseReport {
  std::vector<VacuumRow> rows;
  double max_length_rel_error = 0.0;
  double max_growth_rel_error = 0.0;
  double max_fd_rel_error = 0.0;  ///< over tau <= fd_horizon
  double max_gap_error_in_h = 0.0;
  double fd_horizon = 3.0;

  CsvRow header() const;
  std::vector<CsvRow> csv_rows() const;
};

/// Vacuum report at tau = 0, 0.5, ..., t_end for a line profile with one
/// vacuum interval. The finite-difference gradient uses a local window of
/// `grid_points` nodes covering the image of the labels
/// [a0 - 0.01 (b0 - a0), a0]; the reconstructed gap uses the same node count
/// across the profile support.
VacuumCollapseReport run_vacuum_collapse(const ExperimentSpec& spec);

struct RateEntry {
  std::string series;
  enum class Status { Fitted, ZeroSignal, Failed } status = Status::Fitted;
  double rate = 0.0;
  double r2 = 0.0;
  std::size_t samples = 0;
  std::string message;
};

struct DecayReport {
  std::vector<RateEntry> entries;  ///< ep_sup_dev, ep_grad_l4, ep_e_total, ks_sup_dev
  double fit_start = 0.0;
  double ks_rate_floor = 0.0;  ///< 0.9 min{min sigma0, M}
  bool ep_rates_positive = false;
  bool ep_fits_tight = false;  ///< r2 >= 0.99
  bool ks_rate_ok = false;
  bool zero_signal = false;

  bool passed() const noexcept { return zero_signal || (ep_rates_positive && ep_fits_tight && ks_rate_ok); }
  CsvRow header() const;
  std::vector<CsvRow> csv_rows() const;
};

DecayReport run_decay_fit(const ExperimentSpec& spec);

struct SpectrumRow {
  double epsilon = 0.0;
  double k = 0.0;
  double slow_re = 0.0;
  double slow_im = 0.0;
  double fast_re = 0.0;
  double fast_im = 0.0;
  double ratio_abs = 0.0;
  double residual = 0.0;
  bool stable = false;
};

struct SpectrumTable {
  double alpha = 0.0;
  double gamma = 0.0;
  double mass_level = 0.0;
  std::vector<SpectrumRow> rows;
  bool all_stable = false;

  CsvRow header() const;
  std::vector<CsvRow> csv_rows() const;
};

/// Every (epsilon, k) pair of the experiment through the dispersion relation.
SpectrumTable run_spectrum_table(const ExperimentSpec& spec);

}  // namespace epks
