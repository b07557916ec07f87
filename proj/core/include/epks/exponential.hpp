#pragma once

namespace epks {

/// phi_1, phi_2, phi_3 of exponential integrators:
/// phi_1(z) = (e^z - 1)/z, phi_2(z) = (e^z - 1 - z)/z^2,
/// phi_3(z) = (e^z - 1 - z - z^2/2)/z^3, with phi_k(0) = 1/k!.
struct PhiFunctions {
  double phi1;
  double phi2;
  double phi3;
};

/// Series evaluation near zero avoids the cancellation in the closed forms.
PhiFunctions phi_functions(double z) noexcept;

/// Weights (b0, ba, bb) of the third-order Cox-Matthews exponential RK
/// combination for a scalar linear part z = L dt; reduce to Kutta's RK3
/// (1/6, 2/3, 1/6) at z = 0.
struct Etd3Weights {
  double b0;
  double ba;
  double bb;
};

Etd3Weights etd3_weights(double z) noexcept;

}  // namespace epks
