#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace ddforge {

// SplitMix64 finalizer. This is the fixed mixing function behind all child
// stream derivation, so any (master seed, stream id) cell can be re-run in
// isolation and reproduce the full run bit for bit.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed of the child stream for (master_seed, stream_id). Monte Carlo
// realization r owns stream_id == r; other consumers use ids far above any
// realization count.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed,
                                    std::uint64_t stream_id) {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(stream_id));
}

// Reserved stream id for sampling the shared set of initial states.
inline constexpr std::uint64_t kInitialStateStream = 0x5354415445ULL << 16;

// Deterministic random stream. The mappings from raw engine output to
// doubles are implemented here rather than via std::uniform_real_distribution
// and friends, so the draws depend only on the mt19937_64 sequence and not on
// standard library internals.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [-bound, bound].
  double uniform_symmetric(double bound) {
    return bound * (2.0 * uniform01() - 1.0);
  }

  // Standard complex normal (independent N(0,1) real and imaginary parts),
  // via one Box-Muller pair per call.
  Complex gauss() {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log() finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * kPi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
};

}  // namespace ddforge
