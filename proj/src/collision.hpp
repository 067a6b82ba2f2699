#pragma once

#include <Eigen/Dense>
#include <complex>

#include "model.hpp"

namespace zenocoll {

// Closed-form eigensystem of the path-graph coupling matrix:
//   lambda_k = 2 cos(k pi/(n+1)),  u_k(m) = sqrt(2/(n+1)) sin(m k pi/(n+1)),
// k, m = 1..n.  Enables exact exponentiation of the collision operator.
struct PathEigensystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // column k-1 holds u_k
};

PathEigensystem path_graph_eigensystem(int n);

// U = exp(-i alpha V) = sum_k exp(-i alpha lambda_k) u_k u_k^T.
// alpha == 0 returns the identity exactly.
Eigen::MatrixXcd collision_unitary(int n, double alpha);

// The two unitary blocks applied at every collision.  Built once per
// parameter set and shared read-only across threads.
class CollisionKernel {
 public:
  explicit CollisionKernel(const ModelParams& params);

  const Eigen::MatrixXcd& block_left() const { return left_; }
  const Eigen::MatrixXcd& block_right() const { return right_; }
  int dim() const { return static_cast<int>(left_.rows() + right_.rows()); }

  // state <- (U_L (+) U_R) state.  scratch must have the same size.
  void apply(Eigen::VectorXcd& state, Eigen::VectorXcd& scratch) const;

 private:
  Eigen::MatrixXcd left_;
  Eigen::MatrixXcd right_;
};

}  // namespace zenocoll
