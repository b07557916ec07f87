#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "epks/grid.hpp"
#include "epks/model.hpp"

namespace epks {

/// One polynomial piece of an initial profile on [left, right]:
/// sigma0(x) = M + sum_j coefficients[j] t^j with t = (x - origin) / scale.
struct ProfilePiece {
  double left = 0.0;
  double right = 0.0;
  double origin = 0.0;
  double scale = 1.0;
  std::vector<double> coefficients;
};

struct VacuumSet {
  double left = 0.0;
  double right = 0.0;
};

/// Initial density on the line with sigma0 - M compactly supported,
/// represented as contiguous polynomial pieces so that the cumulative
/// excess F(x) = int_{-inf}^x (sigma0 - M) and all derivatives are exact.
///
/// Invariants checked on construction: sigma0 >= 0, |F(+inf)| <= 1e-8.
class InitialProfile {
 public:
  enum class Side { Left, Right };

  static InitialProfile from_pieces(double M, std::vector<ProfilePiece> pieces);
  /// sigma0 = M everywhere.
  static InitialProfile equilibrium(double M);
  /// Vacuum on [0,1] flanked by ramps M r((-x)/width), M r((x-1)/width) of
  /// width `width`, with r(t) = t^k (k+1 - k t) for k = `order` in 1..3, and
  /// C1 compensating bumps A (1 - t^2)^2 outside the ramps chosen so that
  /// F(0) = F0 and the total excess vanishes.
  static InitialProfile vacuum_ramp(double M, double width, double F0, int order = 1);
  /// sigma0 = M + a (1 - t^2)^6 (1 - 15 t^2), t = (x - centre) / half_width:
  /// even about the centre with zero total excess.
  static InitialProfile symmetric_bump(double M, double amplitude, double centre, double half_width);
  /// Piecewise-linear interpolant of samples on a line grid; a cell with two
  /// zero endpoint samples is vacuum.
  static InitialProfile from_samples(const Field& samples, double M);

  double mass_level() const noexcept { return M_; }
  double sigma0(double x) const;
  /// order-th derivative (0..3); at a piece boundary `side` picks the piece.
  double derivative(double x, int order, Side side = Side::Right) const;
  /// F(x).
  double cumulative(double x) const;
  /// Maximal closed intervals of positive length where sigma0 = 0, sorted.
  const std::vector<VacuumSet>& vacuum_set() const noexcept { return vacuum_; }
  /// Smallest interval outside which sigma0 = M.
  std::pair<double, double> support() const;
  bool is_vacuum_label(double x) const;

 private:
  InitialProfile(double M, std::vector<ProfilePiece> pieces);
  const ProfilePiece* locate(double x, Side side, std::size_t* index = nullptr) const;

  double M_;
  std::vector<ProfilePiece> pieces_;
  std::vector<double> f_left_;  ///< F at each piece's left end
  std::vector<VacuumSet> vacuum_;
};

/// e^{-M tau} F(x).
double velocity_along(double x, double tau, const InitialProfile& prof);
/// x + (1 - e^{-M tau}) F(x) / M; tau may be +infinity.
double trajectory_position(double x, double tau, const InitialProfile& prof);
/// M sigma0 / (sigma0 + (M - sigma0) e^{-M tau}); exactly 0 on vacuum labels.
double sigma_along(double x, double tau, const InitialProfile& prof);
/// d eta / dx = (sigma0 + (M - sigma0) e^{-M tau}) / M.
double trajectory_jacobian(double x, double tau, const InitialProfile& prof);

struct VacuumReport {
  double tau = 0.0;
  double a = 0.0;
  double b = 0.0;
  double length = 0.0;
  double limit_point = 0.0;
};

/// Image of the single vacuum interval [a0, b0] at time tau:
/// a = eta(a0), length = (b0 - a0) e^{-M tau}, b = a + length,
/// limit_point = a0 + F(a0)/M. Throws NoVacuum or MultipleVacuumIntervals.
VacuumReport vacuum_interval(double tau, const InitialProfile& prof);
/// Same for the index-th vacuum interval.
VacuumReport vacuum_interval(double tau, const InitialProfile& prof, std::size_t index);

/// k-th spatial derivative of sigma at eta(x, tau).
///   vacuum labels: e^{(k+1) M tau} d^k sigma0(x), one-sided from the
///   non-vacuum side at an edge; requires d^j sigma0(x) = 0 for 1 <= j < k
///   (PreconditionViolation) and k <= 3 (UnsupportedOrder);
///   other labels, k = 1: sigma0' M^3 e^{-M tau} / D^3 with
///   D = sigma0 + (M - sigma0) e^{-M tau}; k >= 2 throws UnsupportedOrder.
double derivative_along(double x, int k, double tau, const InitialProfile& prof);

struct TrajectoryRow {
  double x = 0.0;
  double tau = 0.0;
  double eta = 0.0;
  double sigma = 0.0;
  double dx_eta = 0.0;
  double velocity = 0.0;
};

/// Rows for every (label, tau) pair, labels sorted, tau-major order.
std::vector<TrajectoryRow> trajectory_bundle(std::vector<double> labels, const std::vector<double>& taus,
                                             const InitialProfile& prof);

/// sigma(y, tau) on the nodes of `grid`, with eta^{-1}(y) found by bisection
/// to 1e-12 in label space. Throws InversionFailure if the recovered labels
/// are not monotone.
KSState reconstruct_eulerian(double tau, const InitialProfile& prof, const Grid& grid);

/// Second-order one-sided difference of the reconstructed density at the
/// left edge a(tau) of a vacuum interval, on a uniform window
/// [a(tau) - window, a(tau)] of `points` nodes.
double reconstructed_edge_gradient(double tau, const InitialProfile& prof, double window, std::size_t points,
                                   std::size_t interval = 0);

struct SemiLagrangianResult {
  double max_gap = 0.0;
  std::size_t steps = 0;
  std::vector<double> labels;
  std::vector<double> positions;
  std::vector<double> sigma_lagrangian;
  std::vector<double> sigma_eulerian;
};

/// Advances the Eulerian KS solver with fixed steps of at most `dt` while
/// moving one trajectory per grid node with the same third-order stages,
/// using spectrally interpolated stage velocities. Density along each
/// trajectory follows the exact logistic law; the gap is measured against the
/// interpolated Eulerian density at the trajectory position.
SemiLagrangianResult semi_lagrangian_oracle(const KSState& initial, const ParamSet& p, double tau_span, double dt);

}  // namespace epks
