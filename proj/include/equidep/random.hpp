#pragma once

#include <cstdint>

namespace equidep {

// Deterministic, platform-independent generator (xoshiro256++ seeded via
// splitmix64). std:: distributions are implementation-defined, so all
// sampling goes through this class to keep seeded runs reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform();

  // Standard normal via Box-Muller; the paired draw is cached.
  double normal();

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint32_t below(std::uint32_t bound);

 private:
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Derives an independent stream seed for task `index` of a batch. Parallel
// code derives one seed per task so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace equidep
