#pragma once

#include <span>
#include <vector>

#include "model.hpp"
#include "series.hpp"

namespace zenocoll {

// ---- Free random walk and half-line diffusion -----------------------------

// Probability q_n(t) of the continuous-time symmetric walk started at n = 1:
// q_n(t) = e^{-2t} I_{|n-1|}(2t).  n may be any integer.
double walk_probability(int n, double t);

// Half-line population with reflecting lower boundary, started at n = 1:
// p_n = q_n(Dt) + q_{1-n}(Dt), n >= 1.
double halfline_population(int n, double dt);

// Populations 1..n_max in one pass (shares the Bessel recurrence).
std::vector<double> halfline_populations(int n_max, double dt);

// Ground population of the uncoupled chain,
// f(Dt) = e^{-2Dt}[I_0(2Dt) + I_1(2Dt)]; equals halfline_population(1, Dt).
double ground_population(double dt);

struct WalkMoments {
  double mu = 0.0;      // sum n p_n
  double sigma2 = 0.0;  // sum n^2 p_n
};

// mu = 1/2 + (1/2)e^{-2Dt}[(1+4Dt) I_0(2Dt) + 4Dt I_1(2Dt)],
// sigma^2 = 2Dt + mu.
WalkMoments moments(double dt);

// ---- Coupled-ladder closed forms ------------------------------------------

// Stable fixed point P_L* = alpha_L / (alpha_L + alpha_R).
double equilibrium_pl(double alpha_left, double alpha_right);

// Short-time law P_L = 1 - Omega^2 t^2 (t in seconds).
double short_time_pl(double t, double rabi);

enum class CaseAVariant {
  ExactAnsatz,  // closed-form solution of the first-order ansatz equation
  Stretched,    // its xt >> 1 stretched-exponential limit
};

// Symmetric case (alpha_L = alpha_R).  t in Rabi periods, x >> 1 for
// validity.
double case_a_pl(double t_tr, double x, CaseAVariant variant);

// e^{-1} crossing of the stretched excess: T = x^3/(1024 pi^3) Rabi periods.
double case_a_relaxation_tr(double x);

// The tail formulas of the asymmetric cases print a shift 2*sqrt(2*pi)/x
// inside the argument but a prefactor 2*sqrt(2)*pi/x in front; the printed
// minimum law 1 - 2.7/x is only reproduced with half that prefactor.  Both
// readings are available; MatchedMinimum is the one consistent with the
// minimum law.
enum class CaseReading { Typeset, MatchedMinimum };

// Collisions on the populated ladder only (alpha_R = 0), x >> 2 sqrt(2) pi:
// P_L(t) = 1 - c(x) e^{-w^2} Phi(w), w = sqrt(8 pi^2 t / x) + 2 sqrt(2 pi)/x.
double case_b_pl(double t_tr, double x,
                 CaseReading reading = CaseReading::Typeset);
// Depth of the single interior minimum: P_L* = 1 - 2.7/x.
double case_b_minimum(double x);
// Power-law recovery past the minimum: P_L ~ 1 - sqrt(4/(pi x t)).
double case_b_tail(double t_tr, double x);

// Collisions on the empty ladder only (alpha_L = 0), same validity domain:
// P_L(t) = e^{-w^2} [1 + c(x) Phi(w)].
double case_c_pl(double t_tr, double x,
                 CaseReading reading = CaseReading::Typeset);
// e^{-1} crossing of e^{-w^2}; scales linearly in x.
double case_c_relaxation_tr(double x);

// Lowest x for which the Case B/C closed forms are inside their derivation
// window (x >> 2 sqrt(2) pi); Case A needs x >> 1.
bool case_validity(ScalingCase which, double x);

// ---- Self-consistent second-order equation ---------------------------------

// Integrates Pddot + D Pdot + 2 Omega^2 (P (f_L + f_R) - f_R) = 0 in
// Rabi-period units with f_s(t) the uncoupled ground populations,
// P(0) = 1, Pdot(0) = 0.  Bridges the first-order closed forms (which drop
// Pddot) and the reduced master equation.
std::vector<double> pendulum_solve(const ModelParams& params,
                                   std::span<const double> t_tr);

}  // namespace zenocoll
