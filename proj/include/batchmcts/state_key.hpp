#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace batchmcts {

// 128-bit position key. Two positions with equal keys are treated as the
// same position; collisions are not checked.
struct StateKey {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  friend bool operator==(const StateKey&, const StateKey&) = default;

  StateKey& operator^=(const StateKey& other) {
    hi ^= other.hi;
    lo ^= other.lo;
    return *this;
  }

  std::string to_hex() const;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& key) const noexcept {
    return static_cast<std::size_t>(key.lo ^ (key.hi * 0x9E3779B97F4A7C15ULL));
  }
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return splitmix64(seed ^ splitmix64(value + 0x632BE59BD9B4E019ULL));
}

}  // namespace batchmcts
