#include "epks/exponential.hpp"

#include <cmath>

namespace epks {

PhiFunctions phi_functions(double z) noexcept {
  if (std::abs(z) < 0.1) {
    // phi_k(z) = sum_n z^n / (n + k)!
    double p1 = 0, p2 = 0, p3 = 0;
    double term = 1.0;  // z^n / n!
    for (int n = 0; n < 20; ++n) {
      p1 += term / (n + 1);
      p2 += term / ((n + 1.0) * (n + 2.0));
      p3 += term / ((n + 1.0) * (n + 2.0) * (n + 3.0));
      term *= z / (n + 1);
    }
    return {p1, p2, p3};
  }
  const double em1 = std::expm1(z);
  const double p1 = em1 / z;
  const double p2 = (em1 - z) / (z * z);
  const double p3 = (em1 - z - 0.5 * z * z) / (z * z * z);
  return {p1, p2, p3};
}

Etd3Weights etd3_weights(double z) noexcept {
  const PhiFunctions f = phi_functions(z);
  return {f.phi1 - 3.0 * f.phi2 + 4.0 * f.phi3, 4.0 * f.phi2 - 8.0 * f.phi3, 4.0 * f.phi3 - f.phi2};
}

}  // namespace epks
