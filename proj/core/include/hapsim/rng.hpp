#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace hapsim {

/// Domain-separation tags for the keyed substreams. Each (seed, tag, ids...)
/// tuple opens an independent stream, so parallel evaluation in any order
/// reproduces the serial results bit for bit.
inline constexpr std::uint64_t kUserPlacementStream = 0x55534552;  // "USER"
inline constexpr std::uint64_t kChannelStream = 0x4348414e;        // "CHAN"
inline constexpr std::uint64_t kSiteFailureStream = 0x4641494c;    // "FAIL"

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based generator (splitmix64) keyed by an arbitrary id tuple.
/// Cheap to construct, so simulations make one per (user, haps) pair instead
/// of sharing mutable state across threads.
class SubstreamRng {
 public:
  explicit SubstreamRng(std::uint64_t key) : state_(key) {}

  static SubstreamRng keyed(std::uint64_t seed,
                            std::initializer_list<std::uint64_t> ids) {
    std::uint64_t key = detail::mix64(seed + 0x9e3779b97f4a7c15ull);
    for (std::uint64_t id : ids) {
      key = detail::mix64(key ^ (id + 0x9e3779b97f4a7c15ull + (key << 6) + (key >> 2)));
    }
    return SubstreamRng(key);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return detail::mix64(state_);
  }

  /// Uniform double in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; consumes exactly two uniforms per call,
  /// which keeps replay independent of any cached spare.
  double next_gaussian() {
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace hapsim
