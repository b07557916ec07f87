#include "epks/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epks/error.hpp"
#include "epks/keller_segel.hpp"
#include "epks/spectral.hpp"

namespace epks {

namespace {

double poly_eval(const std::vector<double>& c, double t, int order) {
  double s = 0.0;
  for (std::size_t j = c.size(); j-- > static_cast<std::size_t>(order);) {
    double falling = 1.0;
    for (int m = 0; m < order; ++m) falling *= static_cast<double>(j - static_cast<std::size_t>(m));
    s = s * t + c[j] * falling;
  }
  return s;
}

double poly_antiderivative(const std::vector<double>& c, double t) {
  double s = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) s = s * t + c[j] / static_cast<double>(j + 1);
  return s * t;
}

std::vector<double> poly_multiply(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

double local_t(const ProfilePiece& p, double x) { return (x - p.origin) / p.scale; }

double piece_integral(const ProfilePiece& p, double from, double to) {
  return p.scale * (poly_antiderivative(p.coefficients, local_t(p, to)) -
                    poly_antiderivative(p.coefficients, local_t(p, from)));
}

bool is_vacuum_piece(const ProfilePiece& p, double M) {
  if (p.coefficients.empty() || p.coefficients[0] != -M) return false;
  return std::all_of(p.coefficients.begin() + 1, p.coefficients.end(), [](double c) { return c == 0.0; });
}

double decay(double M, double tau) { return std::exp(-M * tau); }

double growth_complement(double M, double tau) { return -std::expm1(-M * tau); }

// Ramp r(t) = t^k (k+1 - k t) minus one, times M.
std::vector<double> ramp_excess(double M, int k) {
  std::vector<double> c(static_cast<std::size_t>(k) + 2, 0.0);
  c[0] = -M;
  c[static_cast<std::size_t>(k)] = M * (k + 1);
  c[static_cast<std::size_t>(k) + 1] = -M * k;
  return c;
}

}  // namespace

InitialProfile::InitialProfile(double M, std::vector<ProfilePiece> pieces) : M_(M), pieces_(std::move(pieces)) {
  if (!(M > 0.0) || !std::isfinite(M)) throw Error(ErrorCode::InvalidArgument, "mass level must be positive");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const ProfilePiece& p = pieces_[i];
    if (!(p.right > p.left) || p.scale == 0.0 || p.coefficients.empty()) {
      throw Error(ErrorCode::InvalidArgument, "profile pieces need positive length, nonzero scale and coefficients");
    }
    if (i > 0 && std::abs(p.left - pieces_[i - 1].right) > 1e-12 * std::max(1.0, std::abs(p.left))) {
      throw Error(ErrorCode::InvalidArgument, "profile pieces must be sorted and contiguous");
    }
  }
  double f = 0.0;
  for (const auto& p : pieces_) {
    f_left_.push_back(f);
    f += piece_integral(p, p.left, p.right);
    for (int s = 0; s <= 32; ++s) {
      const double x = p.left + (p.right - p.left) * s / 32.0;
      const double v = M_ + poly_eval(p.coefficients, local_t(p, x), 0);
      if (!std::isfinite(v) || v < -1e-14 * M_) throw Error(ErrorCode::InvalidArgument, "sigma0 must be nonnegative");
    }
    if (is_vacuum_piece(p, M_)) {
      if (!vacuum_.empty() && vacuum_.back().right == p.left) {
        vacuum_.back().right = p.right;
      } else {
        vacuum_.push_back({p.left, p.right});
      }
    }
  }
  f_left_.push_back(f);
  if (std::abs(f) > 1e-8) {
    throw Error(ErrorCode::NonzeroTotalMass, "integral of sigma0 - M is " + std::to_string(f));
  }
}

InitialProfile InitialProfile::from_pieces(double M, std::vector<ProfilePiece> pieces) {
  return InitialProfile(M, std::move(pieces));
}

InitialProfile InitialProfile::equilibrium(double M) { return InitialProfile(M, {}); }

InitialProfile InitialProfile::vacuum_ramp(double M, double width, double F0, int order) {
  if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(F0)) {
    throw Error(ErrorCode::InvalidArgument, "ramp width must be positive and F0 finite");
  }
  if (order < 1 || order > 3) throw Error(ErrorCode::UnsupportedOrder, "ramp order must be 1, 2 or 3");
  if (!(M > 0.0)) throw Error(ErrorCode::InvalidArgument, "mass level must be positive");
  const double k = order;
  const double deficit = M * width * k / (k + 2.0);
  const double mass_left = F0 + deficit;
  const double mass_right = M + deficit - F0;
  const double bump_integral = 16.0 / 15.0;
  auto half_width = [&](double mass) { return std::max(0.5 * width, 2.0 * std::abs(mass) / (bump_integral * M)); };
  const double hl = half_width(mass_left);
  const double hr = half_width(mass_right);
  const double al = mass_left / (hl * bump_integral);
  const double ar = mass_right / (hr * bump_integral);

  std::vector<ProfilePiece> pieces;
  pieces.push_back({-width - 2.0 * hl, -width, -width - hl, hl, {al, 0.0, -2.0 * al, 0.0, al}});
  pieces.push_back({-width, 0.0, 0.0, -width, ramp_excess(M, order)});
  pieces.push_back({0.0, 1.0, 0.0, 1.0, {-M}});
  pieces.push_back({1.0, 1.0 + width, 1.0, width, ramp_excess(M, order)});
  pieces.push_back({1.0 + width, 1.0 + width + 2.0 * hr, 1.0 + width + hr, hr, {ar, 0.0, -2.0 * ar, 0.0, ar}});
  return InitialProfile(M, std::move(pieces));
}

InitialProfile InitialProfile::symmetric_bump(double M, double amplitude, double centre, double half_width) {
  if (!(half_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "half width must be positive");
  std::vector<double> c{1.0};
  for (int i = 0; i < 6; ++i) c = poly_multiply(c, {1.0, 0.0, -1.0});
  c = poly_multiply(c, {1.0, 0.0, -15.0});
  for (auto& x : c) x *= amplitude;
  return InitialProfile(M, {{centre - half_width, centre + half_width, centre, half_width, c}});
}

InitialProfile InitialProfile::from_samples(const Field& samples, double M) {
  const Grid& g = samples.grid();
  if (!g.is_line()) throw Error(ErrorCode::NotLine, "sampled profiles live on a line grid");
  const double tol = 1e-10 * M;
  if (std::abs(samples[0] - M) > tol || std::abs(samples[samples.size() - 1] - M) > tol) {
    throw Error(ErrorCode::InvalidArgument, "sampled sigma0 must equal M at both ends");
  }
  std::vector<ProfilePiece> pieces;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double a = g.node(i);
    const double b = (i + 2 == samples.size()) ? g.right() : g.node(i + 1);
    const double v0 = samples[i];
    const double v1 = samples[i + 1];
    std::vector<double> c{v0 - M};
    if (v1 != v0) c.push_back(v1 - v0);
    if (v0 == 0.0 && v1 == 0.0) c = {-M};
    pieces.push_back({a, b, a, b - a, std::move(c)});
  }
  return InitialProfile(M, std::move(pieces));
}

const ProfilePiece* InitialProfile::locate(double x, Side side, std::size_t* index) const {
  if (pieces_.empty()) return nullptr;
  auto it = (side == Side::Right)
                ? std::upper_bound(pieces_.begin(), pieces_.end(), x,
                                   [](double v, const ProfilePiece& p) { return v < p.left; })
                : std::lower_bound(pieces_.begin(), pieces_.end(), x,
                                   [](const ProfilePiece& p, double v) { return p.left < v; });
  if (it == pieces_.begin()) return nullptr;
  --it;
  const bool inside = (side == Side::Right) ? (x < it->right) : (x <= it->right);
  if (!inside) return nullptr;
  if (index) *index = static_cast<std::size_t>(it - pieces_.begin());
  return &*it;
}

double InitialProfile::sigma0(double x) const { return derivative(x, 0, Side::Right); }

double InitialProfile::derivative(double x, int order, Side side) const {
  if (order < 0 || order > 3) throw Error(ErrorCode::UnsupportedOrder, "profile derivatives are available to order 3");
  const ProfilePiece* p = locate(x, side);
  if (!p) return order == 0 ? M_ : 0.0;
  const double v = poly_eval(p->coefficients, local_t(*p, x), order) / std::pow(p->scale, order);
  return order == 0 ? M_ + v : v;
}

double InitialProfile::cumulative(double x) const {
  if (pieces_.empty() || x < pieces_.front().left) return 0.0;
  if (x >= pieces_.back().right) return f_left_.back();
  std::size_t i = 0;
  const ProfilePiece* p = locate(x, Side::Right, &i);
  return f_left_[i] + piece_integral(*p, p->left, x);
}

std::pair<double, double> InitialProfile::support() const {
  if (pieces_.empty()) return {0.0, 0.0};
  return {pieces_.front().left, pieces_.back().right};
}

bool InitialProfile::is_vacuum_label(double x) const {
  for (const auto& v : vacuum_) {
    if (x >= v.left && x <= v.right) return true;
  }
  return sigma0(x) <= 0.0;
}

double velocity_along(double x, double tau, const InitialProfile& prof) {
  return decay(prof.mass_level(), tau) * prof.cumulative(x);
}

double trajectory_position(double x, double tau, const InitialProfile& prof) {
  const double M = prof.mass_level();
  return x + growth_complement(M, tau) * prof.cumulative(x) / M;
}

double sigma_along(double x, double tau, const InitialProfile& prof) {
  const double s0 = prof.sigma0(x);
  if (s0 <= 0.0) return 0.0;
  const double M = prof.mass_level();
  return M * s0 / (s0 + (M - s0) * decay(M, tau));
}

double trajectory_jacobian(double x, double tau, const InitialProfile& prof) {
  const double s0 = std::max(prof.sigma0(x), 0.0);
  const double M = prof.mass_level();
  return (s0 + (M - s0) * decay(M, tau)) / M;
}

VacuumReport vacuum_interval(double tau, const InitialProfile& prof) {
  const auto& vs = prof.vacuum_set();
  if (vs.empty()) throw Error(ErrorCode::NoVacuum, "profile has no vacuum interval");
  if (vs.size() > 1) {
    throw Error(ErrorCode::MultipleVacuumIntervals,
                "profile has " + std::to_string(vs.size()) + " vacuum intervals; query them by index");
  }
  return vacuum_interval(tau, prof, 0);
}

VacuumReport vacuum_interval(double tau, const InitialProfile& prof, std::size_t index) {
  const auto& vs = prof.vacuum_set();
  if (vs.empty()) throw Error(ErrorCode::NoVacuum, "profile has no vacuum interval");
  if (index >= vs.size()) throw Error(ErrorCode::InvalidArgument, "vacuum interval index out of range");
  const double M = prof.mass_level();
  const VacuumSet& v = vs[index];
  VacuumReport r;
  r.tau = tau;
  r.a = trajectory_position(v.left, tau, prof);
  r.length = (v.right - v.left) * decay(M, tau);
  r.b = r.a + r.length;
  r.limit_point = v.left + prof.cumulative(v.left) / M;
  return r;
}

double derivative_along(double x, int k, double tau, const InitialProfile& prof) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "derivative order must be at least 1");
  const double M = prof.mass_level();
  if (prof.is_vacuum_label(x)) {
    if (k > 3) throw Error(ErrorCode::UnsupportedOrder, "vacuum derivative laws are available to order 3");
    InitialProfile::Side side = InitialProfile::Side::Right;
    for (const auto& v : prof.vacuum_set()) {
      if (x == v.left) side = InitialProfile::Side::Left;
    }
    for (int j = 1; j < k; ++j) {
      if (std::abs(prof.derivative(x, j, side)) > 1e-10 * std::max(1.0, M)) {
        throw Error(ErrorCode::PreconditionViolation,
                    "derivative of order " + std::to_string(j) + " does not vanish at the label");
      }
    }
    return std::exp((k + 1) * M * tau) * prof.derivative(x, k, side);
  }
  if (k > 1) throw Error(ErrorCode::UnsupportedOrder, "higher derivatives are tracked only on vacuum labels");
  const double s0 = prof.sigma0(x);
  const double e = decay(M, tau);
  const double D = s0 + (M - s0) * e;
  return prof.derivative(x, 1) * M * M * M * e / (D * D * D);
}

std::vector<TrajectoryRow> trajectory_bundle(std::vector<double> labels, const std::vector<double>& taus,
                                             const InitialProfile& prof) {
  std::sort(labels.begin(), labels.end());
  std::vector<TrajectoryRow> rows;
  rows.reserve(labels.size() * taus.size());
  for (double tau : taus) {
    for (double x : labels) {
      rows.push_back({x, tau, trajectory_position(x, tau, prof), sigma_along(x, tau, prof),
                      trajectory_jacobian(x, tau, prof), velocity_along(x, tau, prof)});
    }
  }
  return rows;
}

KSState reconstruct_eulerian(double tau, const InitialProfile& prof, const Grid& grid) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::InvalidArgument, "tau must be finite and >= 0");
  std::vector<double> sigma(grid.points());
  double previous = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.points(); ++i) {
    const double y = grid.node(i);
    double lo = y - 1.0;
    double hi = y + 1.0;
    double step = 1.0;
    int guard = 0;
    while (trajectory_position(lo, tau, prof) > y && guard++ < 200) lo -= (step *= 2.0);
    step = 1.0;
    while (trajectory_position(hi, tau, prof) < y && guard++ < 400) hi += (step *= 2.0);
    if (trajectory_position(lo, tau, prof) > y || trajectory_position(hi, tau, prof) < y) {
      throw Error(ErrorCode::InversionFailure, "could not bracket the label of node " + std::to_string(i));
    }
    const double tol = 1e-12 * std::max(1.0, std::abs(y));
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (trajectory_position(mid, tau, prof) < y ? lo : hi) = mid;
    }
    const double label = 0.5 * (lo + hi);
    if (label < previous - tol) {
      throw Error(ErrorCode::InversionFailure, "recovered labels are not monotone at node " + std::to_string(i));
    }
    previous = label;
    sigma[i] = sigma_along(label, tau, prof);
  }
  return KSState{Field(grid, std::move(sigma)), tau};
}

double reconstructed_edge_gradient(double tau, const InitialProfile& prof, double window, std::size_t points,
                                   std::size_t interval) {
  if (!(window > 0.0) || points < 8) throw Error(ErrorCode::InvalidArgument, "need a positive window and >= 8 points");
  const VacuumReport r = vacuum_interval(tau, prof, interval);
  const Grid g = Grid::line(r.a - window, r.a, points);
  const KSState s = reconstruct_eulerian(tau, prof, g);
  const std::size_t n = points;
  const double h = g.spacing();
  return (3.0 * s.sigma[n - 1] - 4.0 * s.sigma[n - 2] + s.sigma[n - 3]) / (2.0 * h);
}

SemiLagrangianResult semi_lagrangian_oracle(const KSState& initial, const ParamSet& p, double tau_span, double dt) {
  if (!initial.sigma.grid().is_torus()) throw Error(ErrorCode::NotTorus, "the oracle runs on a torus");
  if (!(initial.sigma.grid() == p.grid)) throw Error(ErrorCode::InvalidArgument, "state must live on the parameter grid");
  if (!(tau_span >= 0.0) || !(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "need tau_span >= 0 and dt > 0");

  KellerSegelStepper stepper(p);
  SpectralOps& ops = stepper.ops();
  const std::size_t n = p.grid.points();
  const double M = p.mass_level;
  std::vector<double> sigma(initial.sigma.values().begin(), initial.sigma.values().end());

  SemiLagrangianResult out;
  out.labels = p.grid.nodes();
  out.positions = out.labels;
  std::vector<double>& X = out.positions;
  std::vector<double> k1(n), k2(n), stage(n);

  const auto steps = static_cast<std::size_t>(std::ceil(tau_span / dt));
  const double h = steps > 0 ? tau_span / static_cast<double>(steps) : 0.0;
  StageVelocities st;
  for (std::size_t s = 0; s < steps; ++s) {
    stepper.step(sigma, h, &st);
    for (std::size_t i = 0; i < n; ++i) {
      k1[i] = ops.evaluate(st[0], X[i]);
      stage[i] = X[i] + 0.5 * h * k1[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      k2[i] = ops.evaluate(st[1], stage[i]);
      stage[i] = X[i] + h * (2.0 * k2[i] - k1[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double k3 = ops.evaluate(st[2], stage[i]);
      X[i] += h * (k1[i] + 4.0 * k2[i] + k3) / 6.0;
    }
  }
  out.steps = steps;

  Spectrum c;
  ops.forward(sigma, c);
  const double e = std::exp(-M * tau_span);
  out.sigma_lagrangian.resize(n);
  out.sigma_eulerian.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s0 = initial.sigma[i];
    out.sigma_lagrangian[i] = s0 <= 0.0 ? 0.0 : M * s0 / (s0 + (M - s0) * e);
    out.sigma_eulerian[i] = ops.evaluate(c, X[i]);
    out.max_gap = std::max(out.max_gap, std::abs(out.sigma_lagrangian[i] - out.sigma_eulerian[i]));
  }
  return out;
}

}  // namespace epks
