#include "lindblad.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ode.hpp"

namespace zenocoll {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

constexpr complex<double> kI{0.0, 1.0};

// Everything the full RHS needs, precomputed once per integration.
struct FullWork {
  VectorXd h0;    // E/hbar diagonal
  MatrixXcd bop;  // i(H0 + H1 + V/tau) + V^2/(2 tau)
  MatrixXcd vc;   // alpha_L V_L (+) alpha_R V_R
  double inv_tau = 0.0;
  int nl = 0;

  explicit FullWork(const GeneratorSpec& spec) {
    const ModelParams& p = spec.params;
    const OperatorSet ops = build_operators(p, spec.scheme);
    const int dim = p.n_left + p.n_right;
    nl = p.n_left;
    inv_tau = 1.0 / p.tau;
    h0 = ops.h0_diagonal;
    const Eigen::MatrixXd v = ops.v_combined(p.alpha_left, p.alpha_right);
    vc = v.cast<complex<double>>();

    MatrixXcd h = MatrixXcd::Zero(dim, dim);
    h.diagonal() = h0.cast<complex<double>>();
    h(ops.rabi_i, ops.rabi_j) += p.rabi;
    h(ops.rabi_j, ops.rabi_i) += p.rabi;
    h += (v / p.tau).cast<complex<double>>();
    bop = kI * h + (0.5 * inv_tau) * (v * v).cast<complex<double>>();
  }

  // d rho/dt = -(B rho + rho B^dag) + (1/tau) V rho V, which expands to the
  // commutator/anticommutator form of the generator.
  void rhs(const MatrixXcd& rho, MatrixXcd& out, MatrixXcd& tmp) const {
    out.noalias() = bop * rho;
    out.noalias() += rho * bop.adjoint();
    out = -out;
    tmp.noalias() = rho * vc;
    out.noalias() += inv_tau * (vc * tmp);
  }
};

}  // namespace

GeneratorSpec GeneratorSpec::make(GeneratorMode mode, const ModelParams& params) {
  GeneratorSpec spec;
  spec.mode = mode;
  spec.params = params;
  spec.scheme = build_level_scheme(params, EnergyConvention::ShiftedGround);
  return spec;
}

ReducedState ReducedState::ground_left(const ModelParams& params) {
  ReducedState s;
  s.p_left = VectorXd::Zero(params.n_left);
  s.p_right = VectorXd::Zero(params.n_right);
  s.p_left(0) = 1.0;
  return s;
}

Eigen::MatrixXcd full_lindblad_rhs(const Eigen::MatrixXcd& rho,
                                   const GeneratorSpec& spec) {
  if (spec.mode != GeneratorMode::Full)
    throw std::invalid_argument("full_lindblad_rhs: spec.mode must be Full");
  const int dim = spec.params.n_left + spec.params.n_right;
  if (rho.rows() != dim || rho.cols() != dim)
    throw std::invalid_argument("full_lindblad_rhs: dimension mismatch");
  FullWork work(spec);
  MatrixXcd out(dim, dim), tmp(dim, dim);
  work.rhs(rho, out, tmp);
  return out;
}

DensitySeries integrate_full(const Eigen::MatrixXcd& rho0,
                             const GeneratorSpec& spec,
                             std::span<const double> t_grid) {
  if (spec.mode != GeneratorMode::Full)
    throw std::invalid_argument("integrate_full: spec.mode must be Full");
  spec.params.validate();
  const int dim = spec.params.n_left + spec.params.n_right;
  if (rho0.rows() != dim || rho0.cols() != dim)
    throw std::invalid_argument("integrate_full: dimension mismatch");
  if (t_grid.empty()) return {};

  FullWork work(spec);

  // Stiffness guard: refuse rather than grind through an infeasible run.
  {
    const ModelParams& p = spec.params;
    const double a_sum = p.alpha_left + p.alpha_right;
    const double rate = work.h0.cwiseAbs().maxCoeff() + 2.0 * p.rabi +
                        (4.0 * a_sum + 8.0 * a_sum * a_sum) / p.tau;
    const double span = t_grid.back();
    const double est = span * rate / (2.8 * std::pow(spec.rtol_full, 0.2));
    if (est > static_cast<double>(spec.full_step_cap))
      throw std::runtime_error(
          "integrate_full: estimated step count " + std::to_string(est) +
          " exceeds the cap " + std::to_string(spec.full_step_cap) +
          "; the spectral width makes explicit integration infeasible here "
          "(use the reduced master equation)");
  }

  DensitySeries series;
  series.t.assign(t_grid.begin(), t_grid.end());
  series.rho.resize(t_grid.size());
  series.n_left = spec.params.n_left;
  series.n_right = spec.params.n_right;

  // Flattened state for the generic stepper.
  VectorXcd y0 = Eigen::Map<const VectorXcd>(rho0.data(), rho0.size());
  MatrixXcd out(dim, dim), tmp(dim, dim);

  auto rhs = [&](double, const VectorXcd& y) -> VectorXcd {
    const Eigen::Map<const MatrixXcd> rho(y.data(), dim, dim);
    work.rhs(rho, out, tmp);
    return Eigen::Map<const VectorXcd>(out.data(), out.size());
  };
  std::function<void(VectorXcd&)> rehermitize = [&](VectorXcd& y) {
    Eigen::Map<MatrixXcd> rho(y.data(), dim, dim);
    tmp = 0.5 * (rho + rho.adjoint());
    rho = tmp;
  };

  OdeOptions opt;
  opt.rtol = spec.rtol_full;
  opt.atol = 1e-12;
  opt.max_steps = spec.full_step_cap;
  integrate_dopri5(
      rhs, y0, 0.0, t_grid, opt,
      [&](std::size_t i, double, const VectorXcd& y) {
        series.rho[i] = Eigen::Map<const MatrixXcd>(y.data(), dim, dim);
      },
      rehermitize);
  return series;
}

SeriesResult density_observables(const DensitySeries& series, double rabi) {
  SeriesResult out;
  out.t = series.t;
  out.rabi = rabi;
  out.n_left = series.n_left;
  out.n_right = series.n_right;
  const std::size_t n = series.rho.size();
  const int nl = series.n_left;
  const int nr = series.n_right;
  out.p_left.resize(n);
  out.mu_left.resize(n);
  out.sigma_left.resize(n);
  out.coherence.resize(n);
  out.populations.resize(nl + nr, static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const MatrixXcd& rho = series.rho[i];
    double pl = 0.0, mu = 0.0, s2 = 0.0;
    for (int m = 0; m < nl + nr; ++m)
      out.populations(m, static_cast<Eigen::Index>(i)) = rho(m, m).real();
    for (int m = 0; m < nl; ++m) {
      const double p = rho(m, m).real();
      pl += p;
      mu += (m + 1.0) * p;
      s2 += (m + 1.0) * (m + 1.0) * p;
    }
    out.p_left[i] = pl;
    out.mu_left[i] = pl > 0.0 ? mu / pl : 0.0;
    out.sigma_left[i] = pl > 0.0 ? std::sqrt(s2 / pl) : 0.0;
    out.coherence[i] = -2.0 * rho(0, nl).imag();
  }
  return out;
}

ReducedState reduced_rhs(const ReducedState& state, const GeneratorSpec& spec) {
  if (spec.mode == GeneratorMode::Full)
    throw std::invalid_argument("reduced_rhs: spec.mode must be Reduced or ChainsOnly");
  const ModelParams& p = spec.params;
  const int nl = p.n_left;
  const int nr = p.n_right;
  if (state.p_left.size() != nl || state.p_right.size() != nr)
    throw std::invalid_argument("reduced_rhs: dimension mismatch");
  const double dl = p.alpha_left * p.alpha_left / p.tau;
  const double dr = p.alpha_right * p.alpha_right / p.tau;
  const double rabi = spec.mode == GeneratorMode::ChainsOnly ? 0.0 : p.rabi;

  ReducedState d;
  d.p_left = VectorXd::Zero(nl);
  d.p_right = VectorXd::Zero(nr);

  // Tridiagonal stochastic generator with reflecting ends.
  auto chain = [](const VectorXd& pop, double rate, VectorXd& out) {
    const auto n = pop.size();
    if (rate == 0.0 || n == 1) return;
    out(0) += rate * (pop(1) - pop(0));
    for (Eigen::Index m = 1; m + 1 < n; ++m)
      out(m) += rate * (pop(m - 1) - 2.0 * pop(m) + pop(m + 1));
    out(n - 1) += rate * (pop(n - 2) - pop(n - 1));
  };
  chain(state.p_left, dl, d.p_left);
  chain(state.p_right, dr, d.p_right);

  const double pc = state.p_c();
  d.p_left(0) += rabi * pc;
  d.p_right(0) -= rabi * pc;
  d.coherence = kI * rabi * (state.p_left(0) - state.p_right(0)) -
                0.5 * (dl + dr) * state.coherence;
  return d;
}

SeriesResult integrate_reduced(const ReducedState& initial,
                               const GeneratorSpec& spec,
                               std::span<const double> t_grid) {
  if (spec.mode == GeneratorMode::Full)
    throw std::invalid_argument("integrate_reduced: spec.mode must be Reduced or ChainsOnly");
  spec.params.validate();
  const int nl = spec.params.n_left;
  const int nr = spec.params.n_right;
  if (initial.p_left.size() != nl || initial.p_right.size() != nr)
    throw std::invalid_argument("integrate_reduced: dimension mismatch");

  const double dl = spec.params.alpha_left * spec.params.alpha_left / spec.params.tau;
  const double dr = spec.params.alpha_right * spec.params.alpha_right / spec.params.tau;
  const double rabi = spec.mode == GeneratorMode::ChainsOnly ? 0.0 : spec.params.rabi;

  // Flat layout: [p_L(0..nl-1), p_R(0..nr-1), Re u, Im u].
  const int dim = nl + nr + 2;
  VectorXd y0(dim);
  y0.head(nl) = initial.p_left;
  y0.segment(nl, nr) = initial.p_right;
  y0(dim - 2) = initial.coherence.real();
  y0(dim - 1) = initial.coherence.imag();

  auto rhs = [&](double, const VectorXd& y) -> VectorXd {
    VectorXd dy = VectorXd::Zero(dim);
    auto chain = [&](int offset, int n, double rate) {
      if (rate == 0.0 || n == 1) return;
      dy(offset) += rate * (y(offset + 1) - y(offset));
      for (int m = 1; m + 1 < n; ++m)
        dy(offset + m) += rate * (y(offset + m - 1) - 2.0 * y(offset + m) +
                                  y(offset + m + 1));
      dy(offset + n - 1) += rate * (y(offset + n - 2) - y(offset + n - 1));
    };
    chain(0, nl, dl);
    chain(nl, nr, dr);
    const double pc = -2.0 * y(dim - 1);
    dy(0) += rabi * pc;
    dy(nl) -= rabi * pc;
    const double dbar = 0.5 * (dl + dr);
    dy(dim - 2) = -dbar * y(dim - 2);
    dy(dim - 1) = rabi * (y(0) - y(nl)) - dbar * y(dim - 1);
    return dy;
  };

  SeriesResult out;
  out.t.assign(t_grid.begin(), t_grid.end());
  out.rabi = spec.params.rabi;
  out.n_left = nl;
  out.n_right = nr;
  const std::size_t samples = t_grid.size();
  out.p_left.resize(samples);
  out.mu_left.resize(samples);
  out.sigma_left.resize(samples);
  out.coherence.resize(samples);
  out.populations.resize(nl + nr, static_cast<Eigen::Index>(samples));

  OdeOptions opt;
  opt.rtol = spec.rtol_reduced;
  opt.atol = 1e-14;
  integrate_dopri5(rhs, y0, 0.0, t_grid, opt,
                   [&](std::size_t i, double, const VectorXd& y) {
                     double pl = 0.0, mu = 0.0, s2 = 0.0;
                     for (int m = 0; m < nl; ++m) {
                       const double p = y(m);
                       pl += p;
                       mu += (m + 1.0) * p;
                       s2 += (m + 1.0) * (m + 1.0) * p;
                     }
                     out.p_left[i] = pl;
                     out.mu_left[i] = pl > 0.0 ? mu / pl : 0.0;
                     out.sigma_left[i] = pl > 0.0 ? std::sqrt(s2 / pl) : 0.0;
                     out.coherence[i] = -2.0 * y(dim - 1);
                     out.populations.col(static_cast<Eigen::Index>(i)) =
                         y.head(nl + nr);
                   });
  return out;
}

std::vector<double> second_order_pl_residual(const SeriesResult& series,
                                             const GeneratorSpec& spec) {
  const std::size_t n = series.t.size();
  if (n < 3 || series.p_left.size() != n)
    throw std::invalid_argument("second_order_pl_residual: need >= 3 samples of P_L");
  if (series.populations.size() == 0)
    throw std::invalid_argument("second_order_pl_residual: series lacks populations");

  const double h = series.t[1] - series.t[0];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hi = series.t[i + 1] - series.t[i];
    if (std::abs(hi - h) > 1e-9 * h)
      throw std::invalid_argument("second_order_pl_residual: grid must be uniform");
  }

  const ModelParams& p = spec.params;
  const double dl = p.alpha_left * p.alpha_left / p.tau;
  const double dr = p.alpha_right * p.alpha_right / p.tau;
  const double dbar = 0.5 * (dl + dr);
  const double rabi = spec.mode == GeneratorMode::ChainsOnly ? 0.0 : p.rabi;
  // Second differences need the grid to resolve both rates.
  if (h * std::max(dbar, rabi) > 0.02)
    throw std::invalid_argument(
        "second_order_pl_residual: grid too coarse for stable second differences");

  std::vector<double> residual(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double pdd =
        (series.p_left[i + 1] - 2.0 * series.p_left[i] + series.p_left[i - 1]) /
        (h * h);
    const double pd = (series.p_left[i + 1] - series.p_left[i - 1]) / (2.0 * h);
    const double dp = series.populations(0, static_cast<Eigen::Index>(i)) -
                      series.populations(p.n_left, static_cast<Eigen::Index>(i));
    residual[i] = pdd + dbar * pd + 2.0 * rabi * rabi * dp;
  }
  return residual;
}

}  // namespace zenocoll
