#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "collision.hpp"
#include "model.hpp"
#include "series.hpp"

namespace zenocoll {

// Complex amplitudes over the combined ladder, ordered (1_L..N_L, 1_R..N_R).
using PureState = Eigen::VectorXcd;

struct EnsembleSpec {
  ModelParams params;
  long particles = 5000;
  std::vector<double> t_grid;  // seconds, strictly increasing, t_grid[0] >= 0
  std::uint64_t seed = 0;
  int max_threads = 0;  // 0 = all available
  bool track_populations = true;

  void validate() const;
};

// Exact free-flight propagator: diagonal phases of H0 followed by the 2x2
// Rabi rotation on the degenerate ground pair.  The factorization is exact
// because both ground energies vanish in the shifted-ground convention;
// any other scheme is refused.
PureState free_propagate(const PureState& state, double dt,
                         const LevelScheme& scheme, double rabi);

// state <- (U_L (+) U_R) state.
PureState apply_collision(const PureState& state, const CollisionKernel& kernel);

struct TrajectoryResult {
  std::vector<double> p_left;   // per sample
  Eigen::MatrixXd populations;  // (n_left+n_right) x samples
  double max_norm_error = 0.0;
};

// One quantum trajectory from |1_L>: free flights interleaved with
// Poisson-timed collisions, observables recorded by propagating exactly to
// each sample time inside the current flight.
TrajectoryResult run_trajectory(const EnsembleSpec& spec,
                                const LevelScheme& scheme,
                                const CollisionKernel& kernel,
                                std::uint64_t index);

// Ensemble mean and standard error over spec.particles independent
// trajectories.  Bitwise deterministic for a given seed, independent of
// thread count and scheduling.
SeriesResult run_ensemble(const EnsembleSpec& spec);

}  // namespace zenocoll
