#pragma once

#include <cstdint>

namespace zenocoll {

// Counter-based uniform generator.  Draw k of stream s under seed g is a pure
// function of (g, s, k): ensembles are reproducible and independent of the
// order in which trajectories are executed.  The output mixing is the
// splitmix64 finalizer over an additive Weyl sequence.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  // Uniform in [0, 1) on the 53-bit grid.
  double next_unit();

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t base_ = 0;
  std::uint64_t counter_ = 0;
};

// Maps a uniform draw y in [0,1) to an exponential interval -tau*log(y).
// y == 0 is remapped to the smallest positive draw of the 53-bit grid so the
// result stays finite; y -> 1 gives intervals -> 0+ but never exactly zero.
double interval_from_uniform(double y, double tau);

// Exponentially distributed collision intervals with mean tau.  One stream
// per trajectory; streams must not be shared across threads.
class PoissonStream {
 public:
  PoissonStream(double tau, std::uint64_t seed, std::uint64_t trajectory);

  double sample_interval();
  double tau() const { return tau_; }

 private:
  double tau_;
  CounterRng rng_;
};

}  // namespace zenocoll
