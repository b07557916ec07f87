#include "epks/keller_segel.hpp"
#include "epks/spectral.hpp"
#include "support.hpp"

using namespace epks;
using namespace epks::testing;

namespace {

ParamSet params(std::size_t n = 64) {
  ParamSet p;
  p.grid = unit_torus(n);
  return p;
}

Field cosine(const Grid& g, double a) {
  return Field::sample(g, [=](double x) { return 1.0 + a * std::cos(x); });
}

}  // namespace

TEST(StepKs, EquilibriumIsAFixedPoint) {
  const ParamSet p = params();
  const KSState s{Field::constant(p.grid, 1.0), 0.0};
  EXPECT_TRUE(std::isinf(ks_max_dt(s, p)));
  const auto [next, report] = step_ks(s, p, 0.1);
  for (double x : next.sigma.values()) EXPECT_EQ(x, 1.0);
  EXPECT_EQ(report.mass_defect, 0.0);
  EXPECT_EQ(report.min_sigma, 1.0);
}

TEST(StepKs, ConservesMass) {
  Gen gen(4);
  for (int trial = 0; trial < 20; ++trial) {
    const ParamSet p = params();
    std::vector<double> v = gen.trig_poly(p.grid, gen.integer(1, 12), 0.4);
    for (auto& x : v) x += 1.0;
    const KSState s{Field(p.grid, v), 0.0};
    const auto [next, report] = step_ks(s, p, ks_max_dt(s, p));
    EXPECT_LE(std::abs(report.mass_defect), 1e-12 * s.sigma.integral());
    EXPECT_NEAR(next.sigma.integral(), s.sigma.integral(), 1e-12 * s.sigma.integral());
  }
}

TEST(StepKs, ErrorConditions) {
  const ParamSet p = params();
  const KSState s{cosine(p.grid, 0.3), 0.0};
  expect_error(ErrorCode::CflViolation, [&] { step_ks(s, p, 1.01 * ks_max_dt(s, p)); });
  const KSState near_vacuum{cosine(p.grid, 1.0 - 1e-7), 0.0};
  expect_error(ErrorCode::VacuumApproach, [&] { step_ks(near_vacuum, p, 1e-3); });
  std::vector<double> v(p.grid.points(), 1.0);
  v[1] = NAN;
  expect_error(ErrorCode::NonFinite, [&] { step_ks({Field(p.grid, v), 0.0}, p, 1e-3); });
}

TEST(SimulateKs, SmallModeDecaysAtMassLevel) {
  const ParamSet p = params();
  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(0.1 * i);
  const KSRun run = simulate_ks(cosine(p.grid, 1e-6), p, times);
  ASSERT_FALSE(run.blow_up);
  SpectralOps ops(p.grid);
  Spectrum c;
  std::vector<std::pair<double, double>> series;
  for (const auto& s : run.samples) {
    ops.forward(s.state.sigma.values(), c);
    series.emplace_back(s.state.time, std::abs(c[1]));
  }
  EXPECT_NEAR(fit_exponential_rate(series, 0.0, 2.0).rate, 1.0, 0.01);
}

TEST(SimulateKs, SupNormContractsAtLeastAtMinimumDensityRate) {
  const ParamSet p = params(128);
  std::vector<double> times;
  for (int i = 0; i <= 30; ++i) times.push_back(0.1 * i);
  const KSRun run = simulate_ks(cosine(p.grid, 0.3), p, times);
  ASSERT_FALSE(run.blow_up);
  const double ref = run.samples[5].diagnostics.sup_dev;
  for (std::size_t j = 1; j < run.samples.size(); ++j) {
    EXPECT_LE(run.samples[j].diagnostics.sup_dev, run.samples[j - 1].diagnostics.sup_dev * (1 + 1e-12));
    EXPECT_GE(run.samples[j].diagnostics.rho_min, 0.7 - 1e-9);
    if (j >= 5) {
      EXPECT_LE(run.samples[j].diagnostics.sup_dev, std::exp(-0.7 * (times[j] - 0.5)) * ref * (1 + 1e-9));
    }
  }
  EXPECT_LE(run.mass_drift, 1e-12 * 2 * pi);
}

TEST(SimulateKs, EquilibriumAndValidation) {
  const ParamSet p = params();
  const KSRun run = simulate_ks(Field::constant(p.grid, 1.0), p, {0.0, 1.0});
  ASSERT_EQ(run.samples.size(), 2u);
  EXPECT_EQ(run.samples[1].diagnostics.sup_dev, 0.0);
  ParamSet line = p;
  line.grid = Grid::line(0.0, 1.0, 64);
  expect_error(ErrorCode::NotTorus, [&] { simulate_ks(Field::constant(line.grid, 1.0), line, {1.0}); });
  expect_error(ErrorCode::MeanDefect, [&] { simulate_ks(Field::constant(p.grid, 1.1), p, {1.0}); });
}

TEST(SimulateKs, StageVelocitiesMatchKsMapOfStageStates) {
  const ParamSet p = params();
  KellerSegelStepper stepper(p);
  const Field f = cosine(p.grid, 0.3);
  std::vector<double> sigma(f.values().begin(), f.values().end());
  Spectrum expected;
  stepper.velocity_spectrum(sigma, expected);
  StageVelocities st;
  stepper.step(sigma, 0.01, &st);
  for (std::size_t j = 0; j < expected.size(); ++j) EXPECT_EQ(st[0][j], expected[j]);
  EXPECT_NEAR(std::abs(st[1][1] - expected[1]), 0.0, 0.01);
}
