#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace gspec {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based generator: the stream is keyed by (seed, tag, a, b) and the
// k-th draw is a pure function of (key, k). Entry (i, j) of a random matrix
// owns stream (seed, tag, i, j), so sampling order and partitioning across
// workers never change the result.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t tag, std::uint64_t a = 0, std::uint64_t b = 0)
      : key_(splitmix64(splitmix64(splitmix64(splitmix64(seed) ^ tag) ^ a) ^ b)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return splitmix64(key_ + 0xd1b54a32d192ed03ULL * ++counter_); }

  // Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  // Standard normal via Box-Muller; consumes two draws.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  bool bernoulli(double p) { return uniform() < p; }

  double rademacher() { return ((*this)() >> 63) ? 1.0 : -1.0; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Stream tags keep the independent random inputs of one model apart.
namespace stream {
inline constexpr std::uint64_t kEntries = 0x01;
inline constexpr std::uint64_t kDiagonal = 0x02;
inline constexpr std::uint64_t kLatent = 0x03;
inline constexpr std::uint64_t kTrial = 0x04;
inline constexpr std::uint64_t kSearch = 0x05;
}  // namespace stream

}  // namespace gspec
