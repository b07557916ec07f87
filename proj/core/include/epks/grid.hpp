#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace epks {

/// Uniform 1D mesh. A torus excludes its right endpoint (periodic
/// identification); a line includes both endpoints.
class Grid {
 public:
  enum class Kind { Torus, Line };

  static Grid torus(double length, std::size_t points, double origin = 0.0);
  static Grid line(double left, double right, std::size_t points);

  Kind kind() const noexcept { return kind_; }
  bool is_torus() const noexcept { return kind_ == Kind::Torus; }
  bool is_line() const noexcept { return kind_ == Kind::Line; }
  std::size_t points() const noexcept { return points_; }
  double left() const noexcept { return left_; }
  double right() const noexcept { return right_; }
  double length() const noexcept { return right_ - left_; }
  double spacing() const noexcept;
  double node(std::size_t i) const noexcept { return left_ + static_cast<double>(i) * spacing(); }
  std::vector<double> nodes() const;

  /// Quadrature weight of node i: h on a torus, trapezoid weights on a line.
  double weight(std::size_t i) const noexcept;

  bool operator==(const Grid&) const = default;

 private:
  Grid(Kind kind, double left, double right, std::size_t points);

  Kind kind_;
  double left_;
  double right_;
  std::size_t points_;
};

/// Real grid function. Immutable once built.
class Field {
 public:
  Field(Grid grid, std::vector<double> values);

  static Field constant(const Grid& grid, double value);
  static Field sample(const Grid& grid, const std::function<double(double)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  bool all_finite() const noexcept;
  double min() const noexcept;
  double max() const noexcept;

  /// Quadrature of the samples (midpoint on a torus, trapezoid on a line).
  double integral() const noexcept;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Arithmetic mean of the samples.
double mean(const Field& f) noexcept;
double mean(std::span<const double> values) noexcept;

}  // namespace epks
