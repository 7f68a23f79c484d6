#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>

#include "entstruct/angles.hpp"
#include "entstruct/errors.hpp"
#include "entstruct/qcore.hpp"
#include "entstruct/seeds.hpp"
#include "entstruct/structure.hpp"

namespace entstruct {

// The four expectation values, always in the order (mz, mx, az, ax); the
// dataset files and measurement ingestion share this order.
struct FeatureVector {
  double mz = 0.0;
  double mx = 0.0;
  double az = 0.0;
  double ax = 0.0;

  std::array<double, 4> to_array() const { return {mz, mx, az, ax}; }
};

struct LabeledFeature {
  FeatureVector x;
  int label = 0;
};

// Closed-form features of the composed state ⊗_l rho_l. Every observable is
// a tensor product of single-qubit operators (M_z a sum of two), so its
// trace against a product state factors into per-block traces:
//   block of size l with weights (a, b), w = 1 - a - b:
//     <0..0|rho_l|0..0> = <1..1|rho_l|1..1> = w/2 + a/2 + b/2^l  =: t_l
//     Tr[sx^l rho_l] = w
//     Tr[A_+^l rho_l] = w cos(l psi),         psi = (n+1) phi_n / (2n)
//     Tr[B^l rho_l]   = w cos^l(phi_n/2) cos(l phi_n / (2n)),  B = (A_+ + A_-)/2
// All O(#blocks); nothing 2^n-sized is ever allocated on this path.
inline FeatureVector features_composed(int n, const Composition& c,
                                       std::span<const SeedParams> params) {
  if (params.size() != c.blocks.size())
    throw ParameterError("features_composed: params not aligned with blocks");
  int sum = 0;
  for (int b : c.blocks) sum += b;
  if (sum != n || c.n != n)
    throw ParameterError("features_composed: composition does not sum to n");

  const double phi = phi_angle(n);
  const double psi = (n + 1) * phi / (2.0 * n);
  const double chi = phi / (2.0 * n);
  const double edge = std::cos(phi / 2.0);

  double prod_t = 1.0, prod_w = 1.0, prod_az = 1.0, prod_ax = 1.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const int l = c.blocks[i];
    const double a = params[i].alpha, b = params[i].beta;
    if (a < 0.0 || b < 0.0 || a + b > 1.0)
      throw ParameterError("features_composed: (alpha, beta) outside the mixture domain");
    const double w = 1.0 - a - b;
    prod_t *= 0.5 * w + 0.5 * a + std::ldexp(b, -l);
    prod_w *= w;
    prod_az *= w * std::cos(l * psi);
    prod_ax *= w * std::pow(edge, l) * std::cos(l * chi);
  }
  return FeatureVector{2.0 * prod_t, prod_w, prod_az, prod_ax};
}

// p |GHZ><GHZ| + (1-p) I/2^n.
inline FeatureVector features_noised_ghz(int n, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ParameterError("features_noised_ghz: p must lie in [0, 1]");
  const double phi = phi_angle(n);
  return FeatureVector{
      p + (1.0 - p) * std::ldexp(1.0, 1 - n),
      p,
      p * std::cos((n + 1) * phi / 2.0),
      p * std::pow(std::cos(phi / 2.0), n + 1),
  };
}

// cos(theta)|0..0> + sin(theta)|1..1>.
inline FeatureVector features_pure_gen_ghz(int n, double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 4.0))
    throw ParameterError("features_pure_gen_ghz: theta must lie in [0, pi/4]");
  const double phi = phi_angle(n);
  const double s = std::sin(2.0 * theta);
  return FeatureVector{
      1.0,
      s,
      s * std::cos((n + 1) * phi / 2.0),
      s * std::pow(std::cos(phi / 2.0), n + 1),
  };
}

// Reference path: the same four values by dense traces. Used to verify the
// closed forms and to ingest arbitrary density matrices.
inline FeatureVector features_dense(const DenseState& state) {
  const Observables obs = dense_observables(state.qubit_count);
  return FeatureVector{
      expectation(obs.mz, state),
      expectation(obs.mx, state),
      expectation(obs.az, state),
      expectation(obs.ax, state),
  };
}

}  // namespace entstruct
