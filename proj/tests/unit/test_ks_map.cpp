#include "epks/ks_map.hpp"
#include "epks/spectral.hpp"
#include "support.hpp"

using namespace epks;
using namespace epks::testing;

TEST(KsMapTorus, CosineSourceGivesSine) {
  const Grid g = unit_torus(64);
  const KSVelocity kv = ks_map_torus(Field::sample(g, [](double x) { return 1.0 + std::cos(x); }), 1.0);
  for (std::size_t i = 0; i < g.points(); ++i) EXPECT_NEAR(kv.v[i], std::sin(g.node(i)), 1e-14);
  EXPECT_NEAR(kv.source_mean_defect, 0.0, 1e-15);
}

TEST(KsMapTorus, EquilibriumGivesZeroVelocity) {
  const KSVelocity kv = ks_map_torus(Field::constant(unit_torus(), 2.0), 2.0);
  for (double x : kv.v.values()) EXPECT_EQ(x, 0.0);
}

TEST(KsMapTorus, MeanDefectIsProjectedAndReported) {
  const Grid g = unit_torus(32);
  const KSVelocity kv = ks_map_torus(Field::sample(g, [](double x) { return 1.1 + 0.2 * std::sin(2 * x); }), 1.0);
  EXPECT_NEAR(kv.source_mean_defect, 0.1, 1e-14);
  for (std::size_t i = 0; i < g.points(); ++i) EXPECT_NEAR(kv.v[i], -0.1 * std::cos(2 * g.node(i)), 1e-14);
}

TEST(KsMapTorus, DerivativeOfVelocityRecoversSource) {
  Gen gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Grid g = Grid::torus(gen.uniform(1.0, 10.0), 128, gen.uniform(-3.0, 3.0));
    std::vector<double> f = gen.trig_poly(g, gen.integer(1, 20), 0.4);
    const double M = gen.uniform(0.5, 2.0);
    std::vector<double> rho(f);
    for (auto& x : rho) x += M;
    const KSVelocity kv = ks_map_torus(Field(g, rho), M);
    SpectralOps ops(g);
    EXPECT_LT(max_abs_diff(ops.derivative(kv.v.values(), 1), f), 1e-12);
    EXPECT_NEAR(mean(kv.v), 0.0, 1e-14);
  }
}

TEST(KsMapTorus, RejectsLineAndNonFinite) {
  expect_error(ErrorCode::NotTorus, [] { ks_map_torus(Field::constant(Grid::line(0, 1, 16), 1.0), 1.0); });
  std::vector<double> v(16, 1.0);
  v[2] = INFINITY;
  expect_error(ErrorCode::NonFinite, [&] { ks_map_torus(Field(Grid::torus(1.0, 16), v), 1.0); });
}

TEST(KsMapLine, IntegratesCompactlySupportedSource) {
  // sigma - M = g'(x) with g(x) = (1 - x^2)^3 on [-1,1]: the velocity is g.
  const Grid g = Grid::line(-2.0, 2.0, 4001);
  const Field s = Field::sample(g, [](double x) { return std::abs(x) < 1 ? 1.0 - 6.0 * x * (1 - x * x) * (1 - x * x) : 1.0; });
  const KSVelocity kv = ks_map_line(s, 1.0);
  for (std::size_t i = 0; i < g.points(); i += 50) {
    const double x = g.node(i);
    const double exact = std::abs(x) < 1 ? std::pow(1 - x * x, 3) : 0.0;
    EXPECT_NEAR(kv.v[i], exact, 2e-6);
  }
  EXPECT_NEAR(kv.v[0], 0.0, 0.0);
}

TEST(KsMapLine, RejectsTorusAndNonzeroTotal) {
  expect_error(ErrorCode::NotLine, [] { ks_map_line(Field::constant(unit_torus(), 1.0), 1.0); });
  expect_error(ErrorCode::NonzeroTotalMass, [] { ks_map_line(Field::constant(Grid::line(0, 1, 16), 1.5), 1.0); });
}
