#include "analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ode.hpp"
#include "special.hpp"

namespace zenocoll {

namespace {
constexpr double kPi = std::numbers::pi;
// Tail prefactor as typeset: 2 sqrt(2) pi / x.
double tail_prefactor(double x, CaseReading reading) {
  const double c = 2.0 * std::sqrt(2.0) * kPi / x;
  return reading == CaseReading::Typeset ? c : 0.5 * c;
}
// Argument shift, 2 sqrt(2 pi) / x in both readings.
double tail_shift(double x) { return 2.0 * std::sqrt(2.0 * kPi) / x; }
}  // namespace

double walk_probability(int n, double t) {
  if (t < 0.0) throw std::invalid_argument("walk_probability: t must be >= 0");
  return bessel_i_scaled(std::abs(n - 1), 2.0 * t);
}

double halfline_population(int n, double dt) {
  if (n < 1) throw std::invalid_argument("halfline_population: n must be >= 1");
  // q_n(Dt) + q_{1-n}(Dt) = e^{-2Dt}[I_{n-1}(2Dt) + I_n(2Dt)]
  return bessel_i_scaled(n - 1, 2.0 * dt) + bessel_i_scaled(n, 2.0 * dt);
}

std::vector<double> halfline_populations(int n_max, double dt) {
  if (n_max < 1)
    throw std::invalid_argument("halfline_populations: n_max must be >= 1");
  const std::vector<double> scaled = bessel_i_scaled_all(n_max, 2.0 * dt);
  std::vector<double> p(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n)
    p[static_cast<std::size_t>(n - 1)] =
        scaled[static_cast<std::size_t>(n - 1)] + scaled[static_cast<std::size_t>(n)];
  return p;
}

double ground_population(double dt) { return halfline_population(1, dt); }

WalkMoments moments(double dt) {
  if (dt < 0.0) throw std::invalid_argument("moments: Dt must be >= 0");
  const double i0 = bessel_i_scaled(0, 2.0 * dt);
  const double i1 = bessel_i_scaled(1, 2.0 * dt);
  WalkMoments m;
  m.mu = 0.5 + 0.5 * ((1.0 + 4.0 * dt) * i0 + 4.0 * dt * i1);
  m.sigma2 = 2.0 * dt + m.mu;
  return m;
}

double equilibrium_pl(double alpha_left, double alpha_right) {
  if (alpha_left < 0.0 || alpha_right < 0.0)
    throw std::invalid_argument("equilibrium_pl: couplings must be >= 0");
  const double sum = alpha_left + alpha_right;
  if (sum <= 0.0)
    throw std::invalid_argument("equilibrium_pl: both couplings are zero");
  return alpha_left / sum;
}

double short_time_pl(double t, double rabi) {
  return 1.0 - rabi * rabi * t * t;
}

double case_a_pl(double t_tr, double x, CaseAVariant variant) {
  if (x <= 0.0) throw std::invalid_argument("case_a_pl: x must be > 0");
  if (t_tr < 0.0) throw std::invalid_argument("case_a_pl: t must be >= 0");
  const double c = 8.0 * kPi * kPi / (x * x);
  if (variant == CaseAVariant::Stretched) {
    const double exponent =
        c - 32.0 * std::pow(kPi, 1.5) * std::sqrt(t_tr / (x * x * x));
    return 0.5 + 0.5 * std::exp(exponent);
  }
  const double z = 2.0 * x * t_tr;
  const double i0 = bessel_i_scaled(0, z);
  const double i1 = bessel_i_scaled(1, z);
  const double bracket = 1.0 - (1.0 + 2.0 * z) * i0 - 2.0 * z * i1;
  return 0.5 + 0.5 * std::exp(c * bracket);
}

double case_a_relaxation_tr(double x) {
  if (x <= 0.0) throw std::invalid_argument("case_a_relaxation: x must be > 0");
  // exp exponent: 32 pi^{3/2} sqrt(T/x^3) = 1.
  return x * x * x / (1024.0 * kPi * kPi * kPi);
}

double case_b_pl(double t_tr, double x, CaseReading reading) {
  if (x <= 0.0) throw std::invalid_argument("case_b_pl: x must be > 0");
  const double w = std::sqrt(8.0 * kPi * kPi * t_tr / x) + tail_shift(x);
  return 1.0 - tail_prefactor(x, reading) * erfi_scaled(w);
}

double case_b_minimum(double x) {
  if (x <= 0.0) throw std::invalid_argument("case_b_minimum: x must be > 0");
  return 1.0 - 2.7 / x;
}

double case_b_tail(double t_tr, double x) {
  if (!(t_tr > 0.0) || !(x > 0.0))
    throw std::invalid_argument("case_b_tail: t and x must be > 0");
  return 1.0 - std::sqrt(4.0 / (kPi * x * t_tr));
}

double case_c_pl(double t_tr, double x, CaseReading reading) {
  if (x <= 0.0) throw std::invalid_argument("case_c_pl: x must be > 0");
  const double w = std::sqrt(8.0 * kPi * kPi * t_tr / x) + tail_shift(x);
  return std::exp(-w * w) + tail_prefactor(x, reading) * erfi_scaled(w);
}

double case_c_relaxation_tr(double x) {
  if (x <= 0.0) throw std::invalid_argument("case_c_relaxation: x must be > 0");
  // e^{-w^2} = e^{-1} at leading order: w^2 = 8 pi^2 T / x = 1.
  return x / (8.0 * kPi * kPi);
}

bool case_validity(ScalingCase which, double x) {
  // Derivation windows: x >> 1 (symmetric), x >> 2 sqrt(2) pi (one-sided).
  if (which == ScalingCase::Symmetric) return x >= 10.0;
  return x >= 2.0 * std::sqrt(2.0) * kPi;
}

std::vector<double> pendulum_solve(const ModelParams& params,
                                   std::span<const double> t_tr) {
  params.validate();
  const double x_left = ladder_x(params, true);    // D_L T_R
  const double x_right = ladder_x(params, false);  // D_R T_R
  const double damping = 0.5 * (x_left + x_right);
  const double force = 8.0 * kPi * kPi;  // 2 Omega^2 T_R^2

  // State (P, Pdot) in Rabi-period units.
  auto rhs = [&](double t, const Eigen::Vector2d& y) -> Eigen::Vector2d {
    const double f_l =
        x_left > 0.0 ? ground_population(x_left * t) : 1.0;
    const double f_r =
        x_right > 0.0 ? ground_population(x_right * t) : 1.0;
    Eigen::Vector2d dy;
    dy(0) = y(1);
    dy(1) = -damping * y(1) - force * (y(0) * (f_l + f_r) - f_r);
    return dy;
  };

  std::vector<double> out(t_tr.size(), 1.0);
  if (t_tr.empty()) return out;
  OdeOptions opt;
  opt.rtol = 1e-10;
  opt.atol = 1e-12;
  Eigen::Vector2d y0(1.0, 0.0);
  integrate_dopri5(
      rhs, y0, 0.0, t_tr, opt,
      [&](std::size_t i, double, const Eigen::Vector2d& y) { out[i] = y(0); });
  return out;
}

}  // namespace zenocoll
