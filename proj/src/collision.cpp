#include "collision.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zenocoll {

PathEigensystem path_graph_eigensystem(int n) {
  if (n < 1) throw std::invalid_argument("path_graph_eigensystem: n must be >= 1");
  PathEigensystem sys;
  sys.values.resize(n);
  sys.vectors.resize(n, n);
  const double step = std::numbers::pi / (n + 1.0);
  const double scale = std::sqrt(2.0 / (n + 1.0));
  for (int k = 1; k <= n; ++k) {
    sys.values(k - 1) = 2.0 * std::cos(k * step);
    for (int m = 1; m <= n; ++m)
      sys.vectors(m - 1, k - 1) = scale * std::sin(m * k * step);
  }
  return sys;
}

Eigen::MatrixXcd collision_unitary(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("collision_unitary: n must be >= 1");
  if (!std::isfinite(alpha))
    throw std::invalid_argument("collision_unitary: alpha must be finite");
  if (alpha == 0.0) return Eigen::MatrixXcd::Identity(n, n);

  const PathEigensystem sys = path_graph_eigensystem(n);
  Eigen::VectorXcd phases(n);
  for (int k = 0; k < n; ++k)
    phases(k) = std::polar(1.0, -alpha * sys.values(k));
  // V is real symmetric, so U = P diag(phases) P^T is complex symmetric.
  return sys.vectors * phases.asDiagonal() * sys.vectors.transpose();
}

CollisionKernel::CollisionKernel(const ModelParams& params)
    : left_(collision_unitary(params.n_left, params.alpha_left)),
      right_(collision_unitary(params.n_right, params.alpha_right)) {}

void CollisionKernel::apply(Eigen::VectorXcd& state,
                            Eigen::VectorXcd& scratch) const {
  const auto nl = left_.rows();
  const auto nr = right_.rows();
  if (state.size() != nl + nr)
    throw std::invalid_argument("CollisionKernel::apply: dimension mismatch");
  scratch.resize(state.size());
  scratch.head(nl).noalias() = left_ * state.head(nl);
  scratch.tail(nr).noalias() = right_ * state.tail(nr);
  state.swap(scratch);
}

}  // namespace zenocoll
