#pragma once

#include <cstdint>

#include "saddlescape/objective.hpp"

namespace saddlescape {

/// One splitmix64 mixing round.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the independent stream for trial `index` of an experiment seeded
/// with `seed`: splitmix64(seed ^ splitmix64(index + 1)). Trial draws depend
/// only on (seed, index), never on scheduling.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

/// Counter-based generator. Uniform doubles take the top 53 bits; normals use
/// Box-Muller. Nothing here depends on the standard library's distributions,
/// so streams are identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  double normal();

  Vector uniform_in(const Box& box);
  Vector normal_around(const Vector& center, double scale);

 private:
  std::uint64_t state_;
};

}  // namespace saddlescape
