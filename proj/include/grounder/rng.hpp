#pragma once

#include <cstdint>

namespace grounder {

// xoroshiro128++ seeded through splitmix64. Used instead of <random>
// distributions so generated benchmarks are bit-identical across
// standard library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    s0_ = splitmix64(x);
    s1_ = splitmix64(x);
    if (s0_ == 0 && s1_ == 0) s1_ = 1;
  }

  std::uint64_t next_u64() {
    std::uint64_t a = s0_;
    std::uint64_t b = s1_;
    std::uint64_t result = rotl(a + b, 17) + a;
    b ^= a;
    s0_ = rotl(a, 49) ^ b ^ (b << 21);
    s1_ = rotl(b, 28);
    return result;
  }

  // Uniform in [0, 1) with 53 bits of mantissa.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

private:
  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  static std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t s0_;
  std::uint64_t s1_;
};

}  // namespace grounder
