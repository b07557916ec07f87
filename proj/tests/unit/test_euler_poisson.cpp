#include "epks/euler_poisson.hpp"
#include "epks/keller_segel.hpp"
#include "epks/spectral.hpp"
#include "epks/spectrum.hpp"
#include "support.hpp"

using namespace epks;
using namespace epks::testing;

namespace {

ParamSet params(double eps, std::size_t n = 64) {
  ParamSet p;
  p.epsilon = eps;
  p.grid = unit_torus(n);
  return p;
}

Field cosine(const Grid& g, double M, double a, double k = 1.0) {
  return Field::sample(g, [=](double x) { return M + a * std::cos(k * x); });
}

double total(std::span<const double> v, const Grid& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += g.weight(i) * v[i];
  return s;
}

}  // namespace

TEST(ReconstructU, Examples) {
  ParamSet p = params(0.1);
  const Field zero = Field::constant(p.grid, 0.0);
  const Field u0 = reconstruct_u({Field::constant(p.grid, 1.0), zero, 0.0}, p);
  for (double x : u0.values()) EXPECT_EQ(x, 0.0);
  const Field u1 = reconstruct_u({cosine(p.grid, 1.0, 1.0), zero, 0.0}, p);
  const Field u2 = reconstruct_u({Field::constant(p.grid, 1.0), Field::sample(p.grid, [](double x) { return std::sin(x); }), 0.0}, p);
  for (std::size_t i = 0; i < p.grid.points(); ++i) {
    EXPECT_NEAR(u1[i], 0.1 * std::sin(p.grid.node(i)), 1e-15);
    EXPECT_NEAR(u2[i], 0.1 * std::sin(p.grid.node(i)), 1e-15);
  }
}

TEST(StepEp, EquilibriumIsAFixedPoint) {
  const ParamSet p = params(0.05);
  const EPState s{Field::constant(p.grid, 1.0), Field::constant(p.grid, 0.0), 0.0};
  const double dt = ep_max_dt(s, p);
  const auto [next, report] = step_ep(s, p, dt);
  for (std::size_t i = 0; i < p.grid.points(); ++i) {
    EXPECT_NEAR(next.rho[i], 1.0, 1e-15);
    EXPECT_NEAR(next.w[i], 0.0, 1e-15);
  }
  EXPECT_NEAR(report.mass_defect, 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(next.time, dt);
  EXPECT_DOUBLE_EQ(report.friction_factor, std::exp(-dt / (p.epsilon * p.epsilon)));
}

TEST(StepEp, ConservesMassForRandomStates) {
  Gen gen(21);
  for (int trial = 0; trial < 20; ++trial) {
    ParamSet p = params(gen.uniform(0.02, 0.3));
    p.alpha = gen.uniform(0.3, 1.7);
    p.gamma = gen.uniform(1.3, 3.0);
    std::vector<double> rho = gen.trig_poly(p.grid, gen.integer(1, 10), 0.3);
    for (auto& x : rho) x += 1.0;
    const EPState s{Field(p.grid, rho), Field(p.grid, gen.trig_poly(p.grid, 5, 0.5)), 0.0};
    const auto [next, report] = step_ep(s, p, ep_max_dt(s, p));
    const double before = total(s.rho.values(), p.grid);
    EXPECT_LE(std::abs(report.mass_defect), 1e-12 * before);
    EXPECT_NEAR(total(next.rho.values(), p.grid), before, 1e-12 * before);
  }
}

TEST(StepEp, RejectsOversizedStep) {
  const ParamSet p = params(0.05);
  const EPState s{cosine(p.grid, 1.0, 0.2), Field::constant(p.grid, 0.0), 0.0};
  expect_error(ErrorCode::CflViolation, [&] { step_ep(s, p, 1.01 * ep_max_dt(s, p)); });
  expect_error(ErrorCode::InvalidArgument, [&] { step_ep(s, p, 0.0); });
}

TEST(StepEp, DetectsRangeBreachAndNonFinite) {
  const ParamSet p = params(0.05);
  const EPState low{cosine(p.grid, 1.0, 0.8), Field::constant(p.grid, 0.0), 0.0};
  expect_error(ErrorCode::RangeBreach, [&] { step_ep(low, p, 0.1 * ep_max_dt(low, p)); });
  std::vector<double> w(p.grid.points(), 0.0);
  w[5] = NAN;
  const EPState bad{Field::constant(p.grid, 1.0), Field(p.grid, w), 0.0};
  expect_error(ErrorCode::NonFinite, [&] { step_ep(bad, p, 1e-4); });
}

TEST(MaxDt, CombinesAcousticAndDiffusiveLimits) {
  ParamSet p = params(0.1);
  p.dt_cfl = 1.0;
  const EPState s{Field::constant(p.grid, 1.0), Field::constant(p.grid, 0.0), 0.0};
  const double h = p.grid.spacing();
  const double sound = std::pow(0.1, -0.5) * std::sqrt(2.0);
  const double diffusion = 0.1 * 2.0;
  EXPECT_NEAR(ep_max_dt(s, p), std::min(h / sound, h * h / (2 * diffusion)), 1e-15);
}

TEST(SimulateEp, EquilibriumSamples) {
  const ParamSet p = params(0.05);
  const EPRun run = simulate_ep(Field::constant(p.grid, 1.0), Field::constant(p.grid, 0.0), p, {0.0, 1.0, 2.0});
  ASSERT_FALSE(run.blow_up);
  ASSERT_EQ(run.samples.size(), 3u);
  for (const auto& s : run.samples) {
    EXPECT_LT(s.diagnostics.sup_dev, 1e-14);
    EXPECT_LT(s.diagnostics.e_total, 1e-26);
  }
  EXPECT_EQ(run.samples[2].state.time, 2.0);
}

TEST(SimulateEp, RejectsInvalidInputs) {
  const ParamSet p = params(0.05);
  const Field zero = Field::constant(p.grid, 0.0);
  expect_error(ErrorCode::MeanDefect, [&] { simulate_ep(Field::constant(p.grid, 1.05), zero, p, {1.0}); });
  expect_error(ErrorCode::RangeViolation, [&] { simulate_ep(cosine(p.grid, 1.0, 0.6), zero, p, {1.0}); });
  expect_error(ErrorCode::InvalidArgument, [&] { simulate_ep(Field::constant(p.grid, 1.0), zero, p, {1.0, 0.5}); });
}

TEST(SimulateEp, SmallModeDecaysAtSlowRoot) {
  const ParamSet p = params(0.05);
  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(0.05 * i);
  const EPRun run = simulate_ep(cosine(p.grid, 1.0, 1e-6), Field::constant(p.grid, 0.0), p, times);
  ASSERT_FALSE(run.blow_up);
  SpectralOps ops(p.grid);
  Spectrum c;
  std::vector<std::pair<double, double>> series;
  for (const auto& s : run.samples) {
    ops.forward(s.state.rho.values(), c);
    series.emplace_back(s.state.time, std::abs(c[1]));
  }
  const double measured = fit_exponential_rate(series, 0.0, 1.0).rate;
  const double predicted = -dispersion_roots(DispersionQuery::from(p, 1.0)).lambda_slow.real();
  EXPECT_NEAR(measured, predicted, 0.01 * predicted);
}

TEST(SimulateEp, EnergyNonIncreasingAfterLayer) {
  const ParamSet p = params(0.05, 128);
  std::vector<double> times;
  for (int i = 0; i <= 30; ++i) times.push_back(0.1 * i);
  const EPRun run = simulate_ep(cosine(p.grid, 1.0, 0.3), Field::constant(p.grid, 0.0), p, times);
  ASSERT_FALSE(run.blow_up);
  for (std::size_t j = 2; j < run.samples.size(); ++j) {
    EXPECT_LE(run.samples[j].diagnostics.e_total, run.samples[j - 1].diagnostics.e_total);
  }
  EXPECT_LE(run.mass_drift, 1e-10 * p.grid.length());
}

TEST(SimulateEp, IllPreparedVelocityRelaxesWithinLayer) {
  ParamSet p = params(0.05);
  const double layer = 5.0 * std::pow(p.epsilon, 2.0 - p.alpha) * std::log(10.0);
  const Field w0 = Field::sample(p.grid, [](double x) { return std::sin(x); });
  const EPRun run = simulate_ep(cosine(p.grid, 1.0, 0.1), w0, p, {0.0, layer});
  ASSERT_FALSE(run.blow_up);
  EXPECT_LE(run.samples[1].diagnostics.w_l2, 0.1 * run.samples[0].diagnostics.w_l2);
}

TEST(SimulateEp, CloserToLimitForSmallerEpsilon) {
  std::vector<double> times;
  for (int i = 0; i <= 10; ++i) times.push_back(0.1 * i);
  auto error = [&](double eps) {
    const ParamSet p = params(eps);
    const Field rho0 = cosine(p.grid, 1.0, 0.3);
    const EPRun ep = simulate_ep(rho0, Field::constant(p.grid, 0.0), p, times);
    const KSRun ks = simulate_ks(rho0, p, times);
    double sup = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < p.grid.points(); ++i) {
        const double d = ep.samples[j].state.rho[i] - ks.samples[j].state.sigma[i];
        s += p.grid.weight(i) * d * d;
      }
      sup = std::max(sup, std::sqrt(s));
    }
    return sup;
  };
  EXPECT_GT(error(0.2), error(0.05));
}

TEST(SimulateEp, RepeatedRunsAreBitwiseIdentical) {
  const ParamSet p = params(0.1);
  const Field rho0 = cosine(p.grid, 1.0, 0.25, 2.0);
  const Field w0 = Field::sample(p.grid, [](double x) { return 0.1 * std::sin(x); });
  const EPRun a = simulate_ep(rho0, w0, p, {0.5, 1.0});
  const EPRun b = simulate_ep(rho0, w0, p, {0.5, 1.0});
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < p.grid.points(); ++i) {
      EXPECT_EQ(a.samples[j].state.rho[i], b.samples[j].state.rho[i]);
      EXPECT_EQ(a.samples[j].state.w[i], b.samples[j].state.w[i]);
    }
  }
}
