#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "epks/characteristics.hpp"
#include "epks/euler_poisson.hpp"
#include "epks/keller_segel.hpp"
#include "epks/spectral.hpp"

using namespace epks;

namespace {

ParamSet torus_params(std::size_t n) {
  ParamSet p;
  p.grid = Grid::torus(2 * std::numbers::pi, n);
  return p;
}

Field cosine(const Grid& g) {
  return Field::sample(g, [](double x) { return 1.0 + 0.3 * std::cos(x); });
}

void BM_SpectralDerivative(benchmark::State& state) {
  const Grid g = torus_params(static_cast<std::size_t>(state.range(0))).grid;
  SpectralOps ops(g);
  const Field f = cosine(g);
  std::vector<double> out(g.points());
  for (auto _ : state) {
    ops.derivative(f.values(), 1, true, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SpectralDerivative)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_EulerPoissonStep(benchmark::State& state) {
  const ParamSet p = torus_params(static_cast<std::size_t>(state.range(0)));
  EPState s{cosine(p.grid), Field::constant(p.grid, 0.0), 0.0};
  const double dt = ep_max_dt(s, p);
  for (auto _ : state) {
    auto next = step_ep(s, p, dt);
    benchmark::DoNotOptimize(next.first.rho.values().data());
  }
}
BENCHMARK(BM_EulerPoissonStep)->RangeMultiplier(4)->Range(64, 1024);

void BM_KellerSegelStep(benchmark::State& state) {
  const ParamSet p = torus_params(static_cast<std::size_t>(state.range(0)));
  const KSState s{cosine(p.grid), 0.0};
  const double dt = ks_max_dt(s, p);
  for (auto _ : state) {
    auto next = step_ks(s, p, dt);
    benchmark::DoNotOptimize(next.first.sigma.values().data());
  }
}
BENCHMARK(BM_KellerSegelStep)->RangeMultiplier(4)->Range(64, 1024);

void BM_ReconstructEulerian(benchmark::State& state) {
  const InitialProfile prof = InitialProfile::vacuum_ramp(1.0, 1.0, -0.3);
  const auto [lo, hi] = prof.support();
  const Grid g = Grid::line(lo, hi, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const KSState s = reconstruct_eulerian(2.0, prof, g);
    benchmark::DoNotOptimize(s.sigma.values().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ReconstructEulerian)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

}  // namespace

BENCHMARK_MAIN();
