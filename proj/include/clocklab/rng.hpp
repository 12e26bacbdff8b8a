#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace clocklab {

// Counter-based generator: every value is a pure function of
// (seed, stream id, draw index), so draws do not depend on evaluation order.

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : s) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index) {
  return mix64(mix64(seed ^ mix64(stream)) + index);
}

/// Uniform in (0, 1]; never returns 0 so it is safe under log().
inline double counter_unit(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t index) {
  return (static_cast<double>(counter_u64(seed, stream, index) >> 11) + 1.0) *
         0x1.0p-53;
}

/// Standard normal via Box-Muller; one value per index.
inline double counter_gauss(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t index) {
  const double u1 = counter_unit(seed, stream, 2 * index);
  const double u2 = counter_unit(seed, stream, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

/// Indexed draw stream for one logical noise source.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, std::string_view stream_name)
      : seed_(seed), stream_(fnv1a(stream_name)) {}

  double next_gauss() { return counter_gauss(seed_, stream_, index_++); }
  std::uint64_t next_u64() { return counter_u64(seed_, stream_, index_++); }

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t next_in(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t index_ = 0;
};

} // namespace clocklab
