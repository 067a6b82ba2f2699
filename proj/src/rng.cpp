#include "rng.hpp"

#include <cmath>
#include <stdexcept>

namespace zenocoll {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) {
  // Separate the stream keys so that nearby (seed, stream) pairs land far
  // apart in counter space.
  const std::uint64_t a = mix64(seed + kGolden);
  base_ = mix64(a ^ (stream * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull));
}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(base_ + counter_ * kGolden);
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double interval_from_uniform(double y, double tau) {
  if (y <= 0.0) y = 0x1.0p-53;
  return -tau * std::log(y);
}

PoissonStream::PoissonStream(double tau, std::uint64_t seed,
                             std::uint64_t trajectory)
    : tau_(tau), rng_(seed, trajectory) {
  if (!(tau > 0.0)) throw std::invalid_argument("PoissonStream: tau must be > 0");
}

double PoissonStream::sample_interval() {
  return interval_from_uniform(rng_.next_unit(), tau_);
}

}  // namespace zenocoll
