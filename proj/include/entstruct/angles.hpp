#pragma once

#include <numbers>

#include "entstruct/errors.hpp"

namespace entstruct {

// Measurement angle phi_n used by the A_+/A_- observables. Tabulated for
// n = 2..8; everything else follows the 2*pi/n rule (n = 9 has no tabulated
// value and falls back to the same rule).
inline double phi_angle(int n) {
  switch (n) {
    case 2: return std::numbers::pi / 2.0;
    case 3: return 1.231;
    case 4: return 1.0155;
    case 5: return 0.866;
    case 6: return 0.7559;
    case 7: return 0.6713;
    case 8: return 0.6;
    default:
      if (n < 1) throw ParameterError("phi_angle: n must be >= 1, got " + std::to_string(n));
      return 2.0 * std::numbers::pi / double(n);
  }
}

// Phase of the A_+ arm: (n+1)/(2n) * phi_n.
inline double a_plus_phase(int n) {
  return (n + 1) * phi_angle(n) / (2.0 * n);
}

// Phase of the A_- arm: -(n-1)/(2n) * phi_n.
inline double a_minus_phase(int n) {
  return -(n - 1) * phi_angle(n) / (2.0 * n);
}

}  // namespace entstruct
