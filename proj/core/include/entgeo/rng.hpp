#pragma once

#include <cstdint>
#include <random>

#include "entgeo/matrix.hpp"

namespace entgeo {

/// SplitMix64 finalizer; used to derive engine seeds and child streams.
std::uint64_t splitmix64(std::uint64_t x);

/// Reproducible generator: std::mt19937_64 seeded with splitmix64(seed).
///
/// The engine sequence of mt19937_64 is fixed by the standard, and uniform and
/// normal draws are computed here (53-bit mantissa, Box-Muller) rather than
/// through <random> distributions, whose algorithms are implementation-defined.
/// Ensembles are therefore bit-identical across standard libraries.
///
/// `split(stream)` returns an independent child generator whose seed depends
/// only on the parent seed and the stream index, never on how many values the
/// parent has drawn.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }
  Rng split(std::uint64_t stream) const;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// (N(0,1) + i N(0,1)) / sqrt(2), unit variance.
  Complex complex_normal();
  /// Uniform integer on [lo, hi].
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace entgeo
