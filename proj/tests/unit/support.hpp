#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <algorithm>
#include <vector>

#include "epks/error.hpp"
#include "epks/grid.hpp"

namespace epks::testing {

inline constexpr double pi = std::numbers::pi;

template <class Fn>
void expect_error(ErrorCode code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code) << ", nothing thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

/// Deterministic case generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Zero-mean trigonometric polynomial with `modes` random modes, sup bound <= amplitude.
  std::vector<double> trig_poly(const Grid& g, int modes, double amplitude) {
    std::vector<double> a(modes), b(modes);
    double total = 0.0;
    for (int m = 0; m < modes; ++m) {
      a[m] = uniform(-1.0, 1.0);
      b[m] = uniform(-1.0, 1.0);
      total += std::abs(a[m]) + std::abs(b[m]);
    }
    const double k0 = 2.0 * pi / g.length();
    std::vector<double> v(g.points(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double x = g.node(i) - g.left();
      for (int m = 0; m < modes; ++m) v[i] += a[m] * std::cos((m + 1) * k0 * x) + b[m] * std::sin((m + 1) * k0 * x);
      v[i] *= amplitude / total;
    }
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

inline Grid unit_torus(std::size_t n = 64) { return Grid::torus(2.0 * pi, n); }

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace epks::testing
