#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace entstruct {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// splitmix64 stream. Small state, platform-independent output, good enough
// statistics for sampling noise weights and initializing network weights.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next_u64() { return mix64(state_ += kGolden); }

  // uniform on [0, 1), 53-bit resolution
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0, 1]; never zero, safe under log()
  double next_open() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // standard normal, Box-Muller; consumes two uniforms per pair of values
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(next_open()));
    const double a = 2.0 * std::numbers::pi * next_double();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Seed for the stream at coordinate (a, b) of a master seed. Each component
// passes through a full mix so that adjacent indices give unrelated streams.
// This is what makes generation independent of worker scheduling: a record's
// stream depends only on its indices, never on which thread draws it.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t s = mix64(master + kGolden);
  s = mix64(s ^ (a + kGolden));
  s = mix64(s ^ (b + 0x6a09e667f3bcc909ull));
  return s;
}

}  // namespace entstruct
