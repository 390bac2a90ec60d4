#pragma once

#include <cstdint>

#include "shrinkdist/normal.hpp"

namespace shrinkdist {

/// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based random stream keyed by (seed, stream). Draw i depends only on
/// the key and i, so a stream can be split across workers in any order.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed + 0x9e3779b97f4a7c15ULL) ^ mix64(stream * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL)) {}

  std::uint64_t bits(std::uint64_t i) const { return mix64(key_ + (i + 1) * 0x9e3779b97f4a7c15ULL); }

  /// Uniform on the open interval (0, 1): (k + 1/2) / 2^53.
  double uniform(std::uint64_t i) const {
    return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal(std::uint64_t i) const { return normal_quantile_fast(uniform(i)); }

 private:
  std::uint64_t key_;
};

}  // namespace shrinkdist
