#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cheesebench {

/// 64-bit FNV-1a. Stable across platforms, unlike std::hash.
std::uint64_t fnv1a64(std::string_view text);

std::uint64_t splitmix64(std::uint64_t x);

/// Seed splitting: derive an independent stream from (master, tag, index).
/// derive_seed(m, t, i) = splitmix64(splitmix64(m ^ fnv1a64(t)) + i * 0x9E3779B97F4A7C15).
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index = 0);

/// Deterministic generator. The engine is std::mt19937_64 (fully specified by
/// the standard); the distributions are hand-written because the library ones
/// are implementation-defined and would break cross-platform replay.
class Rng {
 public:
  Rng() : engine_(0) {}
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform integer in [lo, hi].
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }
  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform();
  bool chance(double p) { return uniform() < p; }

  friend bool operator==(const Rng& a, const Rng& b) { return a.engine_ == b.engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cheesebench
