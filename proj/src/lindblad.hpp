#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "model.hpp"
#include "series.hpp"

namespace zenocoll {

enum class GeneratorMode {
  Full,        // exact generator on the (N_L+N_R)^2 density matrix
  Reduced,     // populations plus the single resonant coherence
  ChainsOnly,  // Reduced with the Rabi coupling forced to zero
};

struct GeneratorSpec {
  GeneratorMode mode = GeneratorMode::Reduced;
  ModelParams params;
  LevelScheme scheme;

  double rtol_full = 1e-8;
  double rtol_reduced = 1e-9;
  // The full integrator refuses problems whose estimated step count exceeds
  // this cap (explicit integration over Rabi times is infeasible at
  // wide-spectrum parameters; that regime belongs to the reduced equation).
  std::uint64_t full_step_cap = 100'000'000;

  static GeneratorSpec make(GeneratorMode mode, const ModelParams& params);
};

// Slow sector: level populations plus the ground coherence rho_{1L 1R}.
struct ReducedState {
  Eigen::VectorXd p_left;
  Eigen::VectorXd p_right;
  std::complex<double> coherence{0.0, 0.0};

  double p_c() const { return -2.0 * coherence.imag(); }
  double total() const { return p_left.sum() + p_right.sum(); }

  // All population in |1_L>.
  static ReducedState ground_left(const ModelParams& params);
};

// d rho/dt of the exact collision-averaged generator:
// -i[H0,rho] - i[H1,rho] - (i/tau)[V,rho] - (1/2tau){V^2,rho} + (1/tau) V rho V
// with V = alpha_L V_L + alpha_R V_R (the L/R cross terms enter through V).
Eigen::MatrixXcd full_lindblad_rhs(const Eigen::MatrixXcd& rho,
                                   const GeneratorSpec& spec);

struct DensitySeries {
  std::vector<double> t;  // seconds
  std::vector<Eigen::MatrixXcd> rho;
  int n_left = 0;
  int n_right = 0;
};

// Adaptive integration of the full generator; Hermiticity is restored after
// every accepted step.  Throws std::runtime_error when the stiffness guard
// estimates more steps than spec.full_step_cap.
DensitySeries integrate_full(const Eigen::MatrixXcd& rho0,
                             const GeneratorSpec& spec,
                             std::span<const double> t_grid);

// Observable extraction (P_L, conditional moments, p^c, populations).
SeriesResult density_observables(const DensitySeries& series, double rabi);

// Time derivative of the reduced state: nearest-neighbour diffusion with a
// reflecting top level, Rabi exchange through the ground pair, and
// d/dt rho_{1L1R} = i Omega (p_1L - p_1R) - (D_L+D_R)/2 rho_{1L1R}.
ReducedState reduced_rhs(const ReducedState& state, const GeneratorSpec& spec);

SeriesResult integrate_reduced(const ReducedState& initial,
                               const GeneratorSpec& spec,
                               std::span<const double> t_grid);

// Finite-difference residual of Pddot_L + D Pdot_L + 2 Omega^2 (p_1L - p_1R)
// on a uniform grid; the identity holds exactly for the continuous reduced
// solution.  Requires populations in the series and a grid fine enough for
// stable second differences (throws otherwise).
std::vector<double> second_order_pl_residual(const SeriesResult& series,
                                             const GeneratorSpec& spec);

}  // namespace zenocoll
