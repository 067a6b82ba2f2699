#include "trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "rng.hpp"

#ifdef ZENOCOLL_HAVE_OPENMP
#include <omp.h>
#endif

namespace zenocoll {

namespace {

using std::complex;

// Trajectories per reduction block.  The block structure is fixed, so the
// serial block-order reduction gives bitwise identical results for any
// thread count.
constexpr long kBlock = 64;

struct FlightPropagator {
  Eigen::VectorXd energies;  // E/hbar over the combined ordering
  int nl = 0;
  double rabi = 0.0;

  FlightPropagator(const LevelScheme& scheme, double rabi_in) {
    if (scheme.convention != EnergyConvention::ShiftedGround ||
        !scheme.ground_degenerate())
      throw std::invalid_argument(
          "free propagation requires the shifted-ground scheme with a "
          "degenerate ground pair (the exact splitting fails otherwise)");
    nl = static_cast<int>(scheme.energies_left.size());
    const int nr = static_cast<int>(scheme.energies_right.size());
    energies.resize(nl + nr);
    energies.head(nl) = scheme.energies_left;
    energies.tail(nr) = scheme.energies_right;
    rabi = rabi_in;
  }

  void advance(PureState& state, double dt) const {
    for (Eigen::Index i = 0; i < state.size(); ++i) {
      const double e = energies(i);
      if (e != 0.0) state(i) *= std::polar(1.0, -e * dt);
    }
    const double c = std::cos(rabi * dt);
    const double s = std::sin(rabi * dt);
    const complex<double> a = state(0);
    const complex<double> b = state(nl);
    state(0) = c * a - complex<double>(0.0, s) * b;
    state(nl) = c * b - complex<double>(0.0, s) * a;
  }
};

}  // namespace

void EnsembleSpec::validate() const {
  params.validate();
  if (particles < 1) throw std::invalid_argument("particles must be >= 1");
  if (t_grid.empty()) throw std::invalid_argument("t_grid must not be empty");
  if (t_grid.front() < 0.0) throw std::invalid_argument("t_grid[0] must be >= 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument("t_grid must be strictly increasing");
}

PureState free_propagate(const PureState& state, double dt,
                         const LevelScheme& scheme, double rabi) {
  FlightPropagator prop(scheme, rabi);
  if (state.size() != prop.energies.size())
    throw std::invalid_argument("free_propagate: dimension mismatch");
  PureState out = state;
  prop.advance(out, dt);
  return out;
}

PureState apply_collision(const PureState& state, const CollisionKernel& kernel) {
  PureState out = state;
  Eigen::VectorXcd scratch;
  kernel.apply(out, scratch);
  return out;
}

TrajectoryResult run_trajectory(const EnsembleSpec& spec,
                                const LevelScheme& scheme,
                                const CollisionKernel& kernel,
                                std::uint64_t index) {
  const int nl = spec.params.n_left;
  const int nr = spec.params.n_right;
  const std::size_t samples = spec.t_grid.size();
  FlightPropagator prop(scheme, spec.params.rabi);

  PureState state = PureState::Zero(nl + nr);
  state(0) = 1.0;
  Eigen::VectorXcd scratch(nl + nr);

  TrajectoryResult result;
  result.p_left.assign(samples, 0.0);
  result.populations = Eigen::MatrixXd::Zero(nl + nr, static_cast<Eigen::Index>(samples));

  PoissonStream stream(spec.params.tau, spec.seed, index);
  double t = 0.0;
  double t_collision = stream.sample_interval();

  for (std::size_t s = 0; s < samples; ++s) {
    const double t_sample = spec.t_grid[s];
    while (t_collision <= t_sample) {
      prop.advance(state, t_collision - t);
      kernel.apply(state, scratch);
      t = t_collision;
      t_collision += stream.sample_interval();
    }
    if (t_sample > t) {
      prop.advance(state, t_sample - t);
      t = t_sample;
    }
    double pl = 0.0;
    for (int m = 0; m < nl + nr; ++m) {
      const double p = std::norm(state(m));
      result.populations(m, static_cast<Eigen::Index>(s)) = p;
      if (m < nl) pl += p;
    }
    result.p_left[s] = pl;
    const double norm2 = state.squaredNorm();
    result.max_norm_error = std::max(result.max_norm_error, std::abs(norm2 - 1.0));
  }
  return result;
}

SeriesResult run_ensemble(const EnsembleSpec& spec) {
  spec.validate();
  const int nl = spec.params.n_left;
  const int nr = spec.params.n_right;
  const std::size_t samples = spec.t_grid.size();
  const long particles = spec.particles;

  const LevelScheme scheme =
      build_level_scheme(spec.params, EnergyConvention::ShiftedGround);
  const CollisionKernel kernel(spec.params);

  // Welford accumulators: exact zeros for identical trajectories, no
  // cancellation in the variance; blocks combine deterministically.
  struct BlockAccum {
    long count = 0;
    std::vector<double> mean_pl, m2_pl;
    Eigen::MatrixXd sum_pop;
    double max_norm_error = 0.0;

    void add(const TrajectoryResult& one) {
      ++count;
      for (std::size_t s = 0; s < mean_pl.size(); ++s) {
        const double delta = one.p_left[s] - mean_pl[s];
        mean_pl[s] += delta / static_cast<double>(count);
        m2_pl[s] += delta * (one.p_left[s] - mean_pl[s]);
      }
      sum_pop += one.populations;
      max_norm_error = std::max(max_norm_error, one.max_norm_error);
    }

    void merge(const BlockAccum& other) {
      if (other.count == 0) return;
      const double na = static_cast<double>(count);
      const double nb = static_cast<double>(other.count);
      for (std::size_t s = 0; s < mean_pl.size(); ++s) {
        const double delta = other.mean_pl[s] - mean_pl[s];
        m2_pl[s] += other.m2_pl[s] + delta * delta * na * nb / (na + nb);
        mean_pl[s] = (na * mean_pl[s] + nb * other.mean_pl[s]) / (na + nb);
      }
      sum_pop += other.sum_pop;
      max_norm_error = std::max(max_norm_error, other.max_norm_error);
      count += other.count;
    }
  };
  const long blocks = (particles + kBlock - 1) / kBlock;
  std::vector<BlockAccum> partial(static_cast<std::size_t>(blocks));

#ifdef ZENOCOLL_HAVE_OPENMP
  int threads = spec.max_threads > 0 ? spec.max_threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (long b = 0; b < blocks; ++b) {
    BlockAccum acc;
    acc.mean_pl.assign(samples, 0.0);
    acc.m2_pl.assign(samples, 0.0);
    acc.sum_pop = Eigen::MatrixXd::Zero(nl + nr, static_cast<Eigen::Index>(samples));
    const long lo = b * kBlock;
    const long hi = std::min(particles, lo + kBlock);
    for (long traj = lo; traj < hi; ++traj)
      acc.add(run_trajectory(spec, scheme, kernel, static_cast<std::uint64_t>(traj)));
    partial[static_cast<std::size_t>(b)] = std::move(acc);
  }

  // Deterministic reduction in block order.
  BlockAccum total = std::move(partial.front());
  for (std::size_t b = 1; b < partial.size(); ++b) total.merge(partial[b]);

  SeriesResult out;
  out.t = spec.t_grid;
  out.rabi = spec.params.rabi;
  out.n_left = nl;
  out.n_right = nr;
  out.particles = particles;
  out.seed = spec.seed;
  out.max_norm_error = total.max_norm_error;
  out.p_left = total.mean_pl;
  out.mu_left.resize(samples);
  out.sigma_left.resize(samples);
  const double m = static_cast<double>(particles);
  if (particles > 1) out.p_left_err.resize(samples);
  if (spec.track_populations)
    out.populations.resize(nl + nr, static_cast<Eigen::Index>(samples));

  for (std::size_t s = 0; s < samples; ++s) {
    const double mean = out.p_left[s];
    if (particles > 1)
      out.p_left_err[s] = std::sqrt(std::max(0.0, total.m2_pl[s]) / (m - 1.0) / m);
    double mu = 0.0, s2 = 0.0;
    for (int lv = 0; lv < nl; ++lv) {
      const double p = total.sum_pop(lv, static_cast<Eigen::Index>(s)) / m;
      mu += (lv + 1.0) * p;
      s2 += (lv + 1.0) * (lv + 1.0) * p;
    }
    out.mu_left[s] = mean > 0.0 ? mu / mean : 0.0;
    out.sigma_left[s] = mean > 0.0 ? std::sqrt(s2 / mean) : 0.0;
    if (spec.track_populations)
      out.populations.col(static_cast<Eigen::Index>(s)) =
          total.sum_pop.col(static_cast<Eigen::Index>(s)) / m;
  }
  return out;
}

}  // namespace zenocoll
