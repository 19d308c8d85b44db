#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "qss/field.hpp"

namespace qss {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed for stream `stream` of round `round` under `master_seed`:
///   round_seed  = mix64(master_seed ^ mix64(round + 1))
///   stream_seed = mix64(round_seed ^ mix64(stream + 0x9e3779b97f4a7c15))
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t round, std::uint64_t stream);

/// Seeded generator with platform-independent draws (no std distributions,
/// whose output is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, n), rejection sampled. n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();
  /// Index drawn with the given weights (need not be normalized).
  std::size_t pick(std::span<const double> weights);
  Fp2Element element(const Field& field);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qss
