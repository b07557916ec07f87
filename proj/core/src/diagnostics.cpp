#include "epks/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epks/error.hpp"
#include "epks/spectral.hpp"

namespace epks {

namespace {

// Derivatives 0..order of the samples; index j holds d^j f.
std::vector<std::vector<double>> derivative_stack(const Field& f, int order) {
  std::vector<std::vector<double>> out;
  out.emplace_back(f.values().begin(), f.values().end());
  if (order == 0) return out;
  const Grid& g = f.grid();
  if (g.is_torus()) {
    SpectralOps ops(g);
    for (int j = 1; j <= order; ++j) out.push_back(ops.derivative(f.values(), j));
    return out;
  }
  const double h = g.spacing();
  const std::size_t n = g.points();
  for (int j = 1; j <= order; ++j) {
    const auto& prev = out.back();
    std::vector<double> d(n);
    d[0] = (-3.0 * prev[0] + 4.0 * prev[1] - prev[2]) / (2.0 * h);
    d[n - 1] = (3.0 * prev[n - 1] - 4.0 * prev[n - 2] + prev[n - 3]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (prev[i + 1] - prev[i - 1]) / (2.0 * h);
    out.push_back(std::move(d));
  }
  return out;
}

template <class Fn>
double quadrature(const Grid& g, Fn&& integrand) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.points(); ++i) s += g.weight(i) * integrand(i);
  return s;
}

double bregman_pressure(double rho, const ParamSet& p) {
  const double M = p.mass_level;
  const double g = p.gamma;
  return (std::pow(rho, g) - std::pow(M, g) - g * std::pow(M, g - 1.0) * (rho - M)) / (g - 1.0);
}

// Extremes of s^(gamma-2) over the interval spanned by the density samples and M.
std::pair<double, double> pressure_weight_range(const EPState& s, const ParamSet& p) {
  const double lo = std::min(s.rho.min(), p.mass_level);
  const double hi = std::max(s.rho.max(), p.mass_level);
  const double a = std::pow(lo, p.gamma - 2.0);
  const double b = std::pow(hi, p.gamma - 2.0);
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace

Norms norms(const Field& f) {
  const Grid& g = f.grid();
  const auto d = derivative_stack(f, 3);
  Norms n;
  double sq[4] = {0, 0, 0, 0};
  for (int j = 0; j <= 3; ++j) sq[j] = quadrature(g, [&](std::size_t i) { return d[j][i] * d[j][i]; });
  n.l2 = std::sqrt(sq[0]);
  n.h1 = std::sqrt(sq[0] + sq[1]);
  n.h2 = std::sqrt(sq[0] + sq[1] + sq[2]);
  n.h3 = std::sqrt(sq[0] + sq[1] + sq[2] + sq[3]);
  for (double x : f.values()) n.sup = std::max(n.sup, std::abs(x));
  n.l4_of_gradient = std::pow(quadrature(g, [&](std::size_t i) { return std::pow(d[1][i], 4); }), 0.25);
  return n;
}

double energy_e0(const EPState& s, const ParamSet& p) {
  const double ea = std::pow(p.epsilon, p.alpha);
  return quadrature(p.grid, [&](std::size_t i) {
    const double rho = s.rho[i];
    const double w = s.w[i];
    return 0.5 * ea * rho * w * w + bregman_pressure(rho, p);
  });
}

double energy_e1(const EPState& s, const ParamSet& p, int max_order) {
  if (max_order < 1 || max_order > 3) throw Error(ErrorCode::InvalidArgument, "max_order must be 1..3");
  const double ea = std::pow(p.epsilon, p.alpha);
  const auto dr = derivative_stack(s.rho, max_order);
  const auto dw = derivative_stack(s.w, max_order);
  double total = 0.0;
  for (int j = 1; j <= max_order; ++j) {
    total += quadrature(p.grid, [&](std::size_t i) {
      const double rho = s.rho[i];
      return 0.5 * ea * rho * dw[j][i] * dw[j][i] + 0.5 * p.gamma * std::pow(rho, p.gamma - 2.0) * dr[j][i] * dr[j][i];
    });
  }
  return total;
}

double dissipation_d0(const EPState& s, const ParamSet& p) {
  const double ew = std::pow(p.epsilon, p.alpha - 2.0);
  return quadrature(p.grid, [&](std::size_t i) {
    const double dev = s.rho[i] - p.mass_level;
    return ew * s.w[i] * s.w[i] + dev * dev;
  });
}

double dissipation_d1(const EPState& s, const ParamSet& p, int max_order) {
  if (max_order < 1 || max_order > 3) throw Error(ErrorCode::InvalidArgument, "max_order must be 1..3");
  const double ew = std::pow(p.epsilon, p.alpha - 2.0);
  const auto dr = derivative_stack(s.rho, max_order);
  const auto dw = derivative_stack(s.w, max_order);
  double total = 0.0;
  for (int j = 1; j <= max_order; ++j) {
    total += quadrature(p.grid, [&](std::size_t i) {
      const double rho = s.rho[i];
      return ew * rho * dw[j][i] * dw[j][i] + p.gamma * std::pow(rho, p.gamma - 1.0) * dr[j][i] * dr[j][i];
    });
  }
  return total;
}

double dissipation_total(const EPState& s, const ParamSet& p, int max_order) {
  return dissipation_d0(s, p) + dissipation_d1(s, p, max_order);
}

double e0_coercivity_constant(const EPState& s, const ParamSet& p) {
  const auto [wmin, wmax] = pressure_weight_range(s, p);
  return std::min(0.5 * s.rho.min(), 0.5 * p.gamma * wmin);
}

double dissipation_coercivity_constant(const EPState& s, const ParamSet& p) {
  const auto [wmin, wmax] = pressure_weight_range(s, p);
  const double eps2 = p.epsilon * p.epsilon;
  return std::min({2.0 / (eps2 * s.rho.max()), 2.0 / eps2, 2.0 / (p.gamma * wmax), 2.0 * s.rho.min()});
}

DiagnosticsRecord compute_diagnostics(const EPState& s, const ParamSet& p, int max_order) {
  DiagnosticsRecord r;
  r.tau = s.time;
  r.e0 = energy_e0(s, p);
  r.e1 = energy_e1(s, p, max_order);
  r.e_total = r.e0 + r.e1;
  r.d0 = dissipation_d0(s, p);
  r.d1 = dissipation_d1(s, p, max_order);
  r.d_total = r.d0 + r.d1;

  std::vector<double> dev(s.rho.size());
  for (std::size_t i = 0; i < dev.size(); ++i) dev[i] = s.rho[i] - p.mass_level;
  const Norms nd = norms(Field(p.grid, std::move(dev)));
  r.sup_dev = nd.sup;
  r.grad_l4 = nd.l4_of_gradient;
  r.l2_dev = nd.l2;
  r.h2_dev = nd.h2;

  const double ea = std::pow(p.epsilon, p.alpha);
  r.w_l2 = std::sqrt(ea * quadrature(p.grid, [&](std::size_t i) { return s.w[i] * s.w[i]; }));
  r.mass = s.rho.integral();
  r.mass_defect = r.mass - p.mass_level * p.grid.length();
  r.rho_min = s.rho.min();
  r.rho_max = s.rho.max();
  return r;
}

RateFit fit_exponential_rate(std::span<const std::pair<double, double>> series, double t1, double t2) {
  double st = 0, sy = 0, stt = 0, sty = 0, syy = 0;
  std::size_t n = 0;
  for (const auto& [t, y] : series) {
    if (t < t1 || t > t2) continue;
    if (!(y > 0.0)) throw Error(ErrorCode::NonPositiveSample, "sample at tau=" + std::to_string(t) + " is not positive");
    const double ly = std::log(y);
    st += t;
    sy += ly;
    stt += t * t;
    sty += t * ly;
    syy += ly * ly;
    ++n;
  }
  if (n < 5) throw Error(ErrorCode::InsufficientSamples, std::to_string(n) + " samples in fit window");
  const double dn = static_cast<double>(n);
  const double stt_c = stt - st * st / dn;
  const double sty_c = sty - st * sy / dn;
  const double syy_c = syy - sy * sy / dn;
  const double slope = sty_c / stt_c;
  RateFit fit;
  fit.rate = -slope;
  fit.r2 = syy_c > 0.0 ? (sty_c * sty_c) / (stt_c * syy_c) : 1.0;
  fit.samples = n;
  return fit;
}

}  // namespace epks
