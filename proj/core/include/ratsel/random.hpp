#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

namespace ratsel {

/// Seeded random source shared by every stochastic component.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and
/// derives doubles and bounded integers from raw engine output directly, so a
/// given seed produces the same stream on every conforming toolchain. The
/// standard distributions are implementation-defined and are not used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform double in [lo, hi]; returns lo exactly when lo == hi.
  double uniform(double lo, double hi);

  /// Unbiased integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

  std::uint64_t next_u64() { return engine_(); }

  /// Textual engine state, suitable for checkpoints.
  std::string state() const;
  void restore(const std::string& state);

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 mix of (seed, stream); gives independent seeds for sub-components.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ratsel
