#include "saddlescape/random.hpp"

#include <cmath>
#include <numbers>

namespace saddlescape {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t out = splitmix64(state_);
  state_ += 0x9E3779B97F4A7C15ULL;
  return out;
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector Rng::uniform_in(const Box& box) {
  Vector x(box.dim());
  for (Index i = 0; i < box.dim(); ++i) x[i] = uniform(box.lo[i], box.hi[i]);
  return x;
}

Vector Rng::normal_around(const Vector& center, double scale) {
  Vector x(center.size());
  for (Index i = 0; i < center.size(); ++i) x[i] = center[i] + scale * normal();
  return x;
}

}  // namespace saddlescape
