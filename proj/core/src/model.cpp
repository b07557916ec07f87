#include "epks/model.hpp"

#include <cmath>
#include <sstream>

#include "epks/error.hpp"

namespace epks {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

}  // namespace

void ParamSet::validate() const {
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0,1)");
  require(alpha > 0.0 && alpha < 2.0, "alpha must lie in (0,2)");
  require(gamma > 1.0, "gamma must exceed 1");
  require(rho_lower > 0.0 && rho_lower < mass_level && mass_level < rho_upper,
          "require 0 < rho_lower < mass_level < rho_upper");
  require(dt_cfl > 0.0 && dt_cfl <= 1.0, "dt_cfl must lie in (0,1]");
  require(t_end >= 0.0 && std::isfinite(t_end), "t_end must be finite and non-negative");
  require(is_power_of_two(grid.points()), "grid points must be a power of two");
}

double ParamSet::layer_time() const { return 10.0 * std::pow(epsilon, 2.0 - alpha); }

std::string to_string(ValidationReport::Status status) {
  switch (status) {
    case ValidationReport::Status::Pass: return "pass";
    case ValidationReport::Status::MeanDefect: return "MeanDefect";
    case ValidationReport::Status::RangeViolation: return "RangeViolation";
    case ValidationReport::Status::NonFinite: return "NonFinite";
  }
  return "unknown";
}

ValidationReport validate_initial_data(const Field& rho0, const Field& w0, const ParamSet& p) {
  if (!(rho0.grid() == p.grid) || !(w0.grid() == p.grid)) {
    throw Error(ErrorCode::InvalidArgument, "initial data must live on the parameter grid");
  }
  ValidationReport report;
  if (!rho0.all_finite() || !w0.all_finite()) {
    report.status = ValidationReport::Status::NonFinite;
    report.message = "initial data contains non-finite samples";
    return report;
  }
  report.min_rho = rho0.min();
  report.max_rho = rho0.max();

  double defect = 0.0;
  for (std::size_t i = 0; i < rho0.size(); ++i) defect += p.grid.weight(i) * (rho0[i] - p.mass_level);
  report.mean_defect = defect;

  std::ostringstream msg;
  if (!(report.min_rho > p.rho_lower && report.max_rho < p.rho_upper)) {
    report.status = ValidationReport::Status::RangeViolation;
    msg << "rho0 range [" << report.min_rho << ", " << report.max_rho << "] not inside (" << p.rho_lower << ", "
        << p.rho_upper << ")";
  } else if (std::abs(defect) > 1e-10 * p.grid.length()) {
    report.status = ValidationReport::Status::MeanDefect;
    msg << "integral of rho0 - M is " << defect;
  }
  report.message = msg.str();
  return report;
}

void ensure_valid(const ValidationReport& report) {
  switch (report.status) {
    case ValidationReport::Status::Pass: return;
    case ValidationReport::Status::MeanDefect: throw Error(ErrorCode::MeanDefect, report.message);
    case ValidationReport::Status::RangeViolation: throw Error(ErrorCode::RangeViolation, report.message);
    case ValidationReport::Status::NonFinite: throw Error(ErrorCode::NonFinite, report.message);
  }
}

}  // namespace epks
