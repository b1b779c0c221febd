#pragma once

#include <cstdint>

namespace qualomega {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen as the project-wide PRNG
/// because its output sequence is fully specified by the algorithm, so
/// corpora and sampled traces are reproducible across platforms and
/// implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, n). Plain modulo: the bias is below 2^-57 for the
  /// desk-scale ranges used here and keeps the sequence implementation-free.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  /// Uniform draw in [lo, hi] inclusive.
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace qualomega
