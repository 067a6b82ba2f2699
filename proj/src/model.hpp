#pragma once

#include <Eigen/Dense>
#include <string>

namespace zenocoll {

// All physical constants of one experiment.  Angular frequencies in rad/s,
// couplings dimensionless, tau in seconds.
struct ModelParams {
  int n_left = 40;
  int n_right = 40;
  double omega_left = 1.3e10;
  double omega_right = 9.7e9;
  double rabi = 935.0;
  double alpha_left = 0.2;
  double alpha_right = 0.2;
  double tau = 0.0;  // mean collision interval; must be set explicitly

  double rabi_period() const;
  // Throws std::invalid_argument on the first violated constraint.
  void validate() const;
};

enum class EnergyConvention {
  // E/hbar = omega_s*(n(n+1) - 2): both ground levels sit exactly at zero.
  ShiftedGround,
  // E/hbar = omega_s*n(n+1) as given by the rotational spectrum.
  RawRotational,
};

// Rotational level energy E/hbar for level n = 1, 2, ...
double rotational_energy(double omega, int n, EnergyConvention convention);

struct LevelScheme {
  Eigen::VectorXd energies_left;   // E/hbar, rad/s, index n-1
  Eigen::VectorXd energies_right;
  EnergyConvention convention = EnergyConvention::ShiftedGround;

  bool ground_degenerate() const {
    return energies_left(0) == energies_right(0);
  }
};

LevelScheme build_level_scheme(
    const ModelParams& params,
    EnergyConvention convention = EnergyConvention::ShiftedGround);

// Smallest |E_m - E_n|/hbar over excited pairs m, n > 1 by exhaustive scan.
// Returns +inf when a ladder has no excited level, 0 when a degenerate
// excited pair exists (the slow/fast splitting is then invalid).
double min_offresonant_gap(const LevelScheme& scheme);

struct TimescaleReport {
  double gap = 0.0;              // Delta E / hbar
  double ratio_rabi = 0.0;       // gap / Omega
  double ratio_collision = 0.0;  // gap * tau
  double threshold = 100.0;
  bool rabi_ok = false;
  bool collision_ok = false;

  bool passed() const { return rabi_ok && collision_ok; }
  std::string summary() const;
};

// Checks gap >> Omega and gap >> 1/tau, with ">>" meaning a configurable
// ratio (default 100).
TimescaleReport validate_timescales(const ModelParams& params,
                                    const LevelScheme& scheme,
                                    double threshold = 100.0);

enum class ScalingCase { Symmetric, LeftOnly, RightOnly };

// Dimensionless collision strength per Rabi period.  Each case uses its own
// local definition:
//   Symmetric: x = abar^2 T_R / tau with abar^2 = (aL^2 + aR^2)/2
//   LeftOnly:  x = aL^2 T_R / (2 tau)
//   RightOnly: x = aR^2 T_R / (2 tau)
double scaling_parameter(const ModelParams& params, ScalingCase which);

// Per-ladder x_s = D_s*T_R = alpha_s^2 T_R / tau; converts times in Rabi
// periods into the diffusion variable Dt = x_s * t/T_R.
double ladder_x(const ModelParams& params, bool left);

// Time for the diffusive climb to reach the top of a ladder, in Rabi
// periods: N^2/x (rough) or N^2/(pi^2 x) (refined); min over the coupled
// ladders, +inf when no ladder is coupled.
double dissociation_time_tr(const ModelParams& params, bool refined);

// Nearest-neighbour coupling matrix of one ladder: symmetric, zero diagonal,
// ones on the first off-diagonals.  n = 1 gives the 1x1 zero matrix.
Eigen::MatrixXd coupling_matrix(int n);

struct OperatorSet {
  Eigen::VectorXd h0_diagonal;  // E/hbar over (1_L..N_L, 1_R..N_R)
  int rabi_i = 0;               // index of |1_L> in the combined ordering
  int rabi_j = 0;               // index of |1_R>
  Eigen::MatrixXd v_left;
  Eigen::MatrixXd v_right;

  // alpha_L V_L (+) alpha_R V_R on the combined space (block diagonal).
  Eigen::MatrixXd v_combined(double alpha_left, double alpha_right) const;
};

OperatorSet build_operators(const ModelParams& params,
                            const LevelScheme& scheme);

}  // namespace zenocoll
