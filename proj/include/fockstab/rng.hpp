#pragma once

#include <cstdint>
#include <random>

namespace fockstab {

/// Deterministic per-trajectory random stream. Exactly one uniform draw is
/// consumed per Markov step, before any other work in the step, so a
/// trajectory is a pure function of its seed.
///
/// The engine is std::mt19937_64 (output sequence pinned by the C++
/// standard); uniforms are formed as (x >> 11) * 2^-53, giving values in
/// [0, 1) independent of any library distribution implementation.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  double next_uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

/// Seed for trajectory `index` under `master_seed`. This is the SplitMix64
/// output function applied to master_seed + (index + 1) * 2^64/phi, fixed
/// bit-exactly so any conforming implementation reproduces a run:
///
///   z = master + (index + 1) * 0x9E3779B97F4A7C15
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
inline std::uint64_t derive_trajectory_seed(std::uint64_t master_seed,
                                            std::uint64_t index) {
  std::uint64_t z = master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace fockstab
