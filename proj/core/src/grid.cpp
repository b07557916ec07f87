#include "epks/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "epks/error.hpp"

namespace epks {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::MeanDefect: return "MeanDefect";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::NotTorus: return "NotTorus";
    case ErrorCode::NotLine: return "NotLine";
    case ErrorCode::NonzeroTotalMass: return "NonzeroTotalMass";
    case ErrorCode::CflViolation: return "CflViolation";
    case ErrorCode::RangeBreach: return "RangeBreach";
    case ErrorCode::VacuumApproach: return "VacuumApproach";
    case ErrorCode::NoVacuum: return "NoVacuum";
    case ErrorCode::MultipleVacuumIntervals: return "MultipleVacuumIntervals";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::InversionFailure: return "InversionFailure";
    case ErrorCode::ResonantDenominator: return "ResonantDenominator";
    case ErrorCode::ZeroWavenumber: return "ZeroWavenumber";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NonPositiveSample: return "NonPositiveSample";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Grid::Grid(Kind kind, double left, double right, std::size_t points)
    : kind_(kind), left_(left), right_(right), points_(points) {
  if (points < 8) {
    throw Error(ErrorCode::InvalidArgument, "grid needs at least 8 points, got " + std::to_string(points));
  }
  if (!(right > left) || !std::isfinite(left) || !std::isfinite(right)) {
    throw Error(ErrorCode::InvalidArgument, "grid extent must be finite and positive");
  }
}

Grid Grid::torus(double length, std::size_t points, double origin) {
  return Grid(Kind::Torus, origin, origin + length, points);
}

Grid Grid::line(double left, double right, std::size_t points) {
  return Grid(Kind::Line, left, right, points);
}

double Grid::spacing() const noexcept {
  const auto n = static_cast<double>(points_);
  return kind_ == Kind::Torus ? length() / n : length() / (n - 1.0);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(points_);
  for (std::size_t i = 0; i < points_; ++i) x[i] = node(i);
  return x;
}

double Grid::weight(std::size_t i) const noexcept {
  const double h = spacing();
  if (kind_ == Kind::Line && (i == 0 || i + 1 == points_)) return 0.5 * h;
  return h;
}

Field::Field(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.points()) {
    throw Error(ErrorCode::InvalidArgument, "field has " + std::to_string(values_.size()) +
                                                " samples but grid has " + std::to_string(grid_.points()));
  }
}

Field Field::constant(const Grid& grid, double value) {
  return Field(grid, std::vector<double>(grid.points(), value));
}

Field Field::sample(const Grid& grid, const std::function<double(double)>& fn) {
  std::vector<double> v(grid.points());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.node(i));
  return Field(grid, std::move(v));
}

bool Field::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

double Field::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

double Field::integral() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) s += grid_.weight(i) * values_[i];
  return s;
}

double mean(std::span<const double> values) noexcept {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double mean(const Field& f) noexcept { return mean(f.values()); }

}  // namespace epks
