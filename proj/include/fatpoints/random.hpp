#pragma once

#include <cstdint>
#include <random>

namespace fatpoints {

/// Seeded generator whose draws are identical on every platform
/// (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  long long uniform(long long lo, long long hi);

 private:
  std::mt19937_64 engine_;
};

/// Independent seed for stream `index` derived from `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace fatpoints
