#include "fatpoints/random.hpp"

namespace fatpoints {

long long Rng::uniform(long long lo, long long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<long long>(next());
  const std::uint64_t limit = ~0ULL - (~0ULL % span);
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return lo + static_cast<long long>(x % span);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

}  // namespace fatpoints
