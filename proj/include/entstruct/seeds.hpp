#pragma once

#include <cmath>
#include <string>

#include "entstruct/errors.hpp"
#include "entstruct/rng.hpp"

namespace entstruct {

// Noise weights (alpha, beta) of one GHZ-class seed block. Plain values;
// the witness constraint is enforced by the sampler, not the type, so tests
// can also build out-of-class states (e.g. the fully mixed block).
struct SeedParams {
  double alpha = 0.0;
  double beta = 0.0;
};

// Tr[W_G rho_n] for the seed family, W_G = I/2 - |GHZ><GHZ|:
//   (1/2)(alpha - 1) + beta (2^n - 1)/2^n.
// Negative iff the block is genuinely n-partite entangled (GHZ class).
inline double witness_value(int n, double alpha, double beta) {
  if (n < 1) throw ParameterError("witness_value: n must be >= 1");
  const double mixed_term = 1.0 - std::ldexp(1.0, -n);  // (2^n - 1)/2^n
  return 0.5 * (alpha - 1.0) + mixed_term * beta;
}

inline bool seed_params_valid(int n, const SeedParams& p) {
  return p.alpha >= 0.0 && p.beta >= 0.0 && p.alpha + p.beta <= 1.0 &&
         witness_value(n, p.alpha, p.beta) < 0.0;
}

inline constexpr const char* kSamplerId = "unit-square-rejection-v1";
inline constexpr long kSampleAttemptCap = 1000000;

// Uniform over {alpha, beta >= 0, alpha + beta <= 1, witness < 0} by
// rejection from the unit square. Exactly two draws per attempt, so a
// stream position is a pure function of the attempt count. The region has
// positive area for every n >= 1; the attempt cap only guards misuse.
inline SeedParams sample_seed_params(int n, SplitMix64& rng, long* attempts_out = nullptr) {
  for (long attempt = 1; attempt <= kSampleAttemptCap; ++attempt) {
    SeedParams p;
    p.alpha = rng.next_double();
    p.beta = rng.next_double();
    if (seed_params_valid(n, p)) {
      if (attempts_out) *attempts_out = attempt;
      return p;
    }
  }
  throw SamplingError("sample_seed_params: attempt cap reached for n = " + std::to_string(n));
}

}  // namespace entstruct
