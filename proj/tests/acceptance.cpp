// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
// Every tolerance is pinned here, in code.  Monte Carlo runs use fixed
// documented seeds, so reruns are bit-reproducible and the verdicts stable.

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "collision.hpp"
#include "compare.hpp"
#include "lindblad.hpp"
#include "model.hpp"
#include "presets.hpp"
#include "series.hpp"
#include "trajectory.hpp"

using namespace zenocoll;

namespace {

constexpr double kPi = std::numbers::pi;
int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::printf("[%s] %-34s %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

ModelParams paper_params(double collisions_per_tr, double alpha_left = 0.2,
                         double alpha_right = 0.2) {
  ModelParams p;
  p.alpha_left = alpha_left;
  p.alpha_right = alpha_right;
  p.tau = p.rabi_period() / collisions_per_tr;
  return p;
}

SeriesResult reduced_run(const ModelParams& p, double t_max_tr, int samples) {
  GeneratorSpec spec = GeneratorSpec::make(GeneratorMode::Reduced, p);
  const std::vector<double> grid =
      linspace(0.0, t_max_tr * p.rabi_period(), samples);
  return integrate_reduced(ReducedState::ground_left(p), spec, grid);
}

// --- 1. unitarity / conservation -------------------------------------------

void criterion_1(const DeskReport& desk) {
  double worst_unitarity = 0.0;
  for (auto [n, alpha] : {std::pair{40, 0.2}, {40, 0.4}, {2, kPi / 2.0}}) {
    const Eigen::MatrixXcd u = collision_unitary(n, alpha);
    worst_unitarity = std::max(
        worst_unitarity,
        (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff());
  }

  EnsembleSpec spec;
  spec.params = paper_params(800.0);
  spec.particles = 64;
  spec.t_grid = linspace(0.0, 1.5 * spec.params.rabi_period(), 31);
  spec.seed = 101;
  const double norm_drift = run_ensemble(spec).max_norm_error;

  const SeriesResult red = reduced_run(paper_params(550.0), 1.5, 61);
  double pop_drift = 0.0;
  for (Eigen::Index i = 0; i < red.populations.cols(); ++i)
    pop_drift = std::max(pop_drift, std::abs(red.populations.col(i).sum() - 1.0));

  const bool ok = worst_unitarity <= 1e-12 && norm_drift <= 1e-10 &&
                  pop_drift <= 1e-9 && desk.max_trace_error <= 1e-10 &&
                  desk.min_eigenvalue >= -1e-8;
  report("1. unitarity/conservation", ok,
         fmt("|U+U-I|=%.1e norm drift=%.1e pop drift=%.1e trace=%.1e min eig=%.1e",
             worst_unitarity, norm_drift, pop_drift, desk.max_trace_error,
             desk.min_eigenvalue));
}

// --- 2. diffusion oracle ----------------------------------------------------

void criterion_2() {
  ModelParams p;
  p.n_left = 200;
  p.n_right = 1;
  p.rabi = 2.0 * kPi;  // T_R = 1 s; the exchange is switched off below
  p.omega_left = 1e4;
  p.omega_right = 1e4;
  p.alpha_left = 0.5;
  p.alpha_right = 0.0;
  p.tau = 0.25;  // D = alpha^2/tau = 1/s
  GeneratorSpec spec = GeneratorSpec::make(GeneratorMode::ChainsOnly, p);

  const std::vector<double> grid = linspace(0.0, 5.0, 26);  // Dt <= 5
  const SeriesResult series =
      integrate_reduced(ReducedState::ground_left(p), spec, grid);
  double max_pop_dev = 0.0, max_moment_rel = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto exact = halfline_populations(p.n_left, grid[i]);
    for (int n = 0; n < p.n_left; ++n)
      max_pop_dev = std::max(
          max_pop_dev,
          std::abs(series.populations(n, static_cast<Eigen::Index>(i)) -
                   exact[static_cast<std::size_t>(n)]));
    if (i > 0) {
      const WalkMoments m = moments(grid[i]);
      max_moment_rel =
          std::max(max_moment_rel, std::abs(series.mu_left[i] / m.mu - 1.0));
      const double s2 = series.sigma_left[i] * series.sigma_left[i];
      max_moment_rel = std::max(max_moment_rel, std::abs(s2 / m.sigma2 - 1.0));
    }
  }

  // Large-Dt asymptotics at Dt = 100.  The raw mean keeps its +1/2 offset
  // (a 4.3% effect here), so the known constants are removed before gating.
  const std::vector<double> far = {0.0, 100.0};
  const SeriesResult tail =
      integrate_reduced(ReducedState::ground_left(p), spec, far);
  const double mu_num = tail.mu_left[1];
  const double s2_num = tail.sigma_left[1] * tail.sigma_left[1];
  const double mu_asym = std::sqrt(4.0 * 100.0 / kPi);
  const double mean_dev = std::abs((mu_num - 0.5) / mu_asym - 1.0);
  const double var_dev = std::abs((s2_num - mu_num) / (2.0 * 100.0) - 1.0);

  const bool ok = max_pop_dev <= 1e-8 && max_moment_rel <= 1e-6 &&
                  mean_dev <= 0.01 && var_dev <= 0.01;
  report("2. diffusion oracle", ok,
         fmt("pops=%.1e moments rel=%.1e asym(mean)=%.2e asym(var)=%.2e "
             "[raw mean ratio %.3f]",
             max_pop_dev, max_moment_rel, mean_dev, var_dev, mu_num / mu_asym));
}

// --- 3. cross-engine equivalence --------------------------------------------

void criterion_3() {
  double worst_z = 0.0;
  double worst_rate = 0.0;
  for (double rate : {300.0, 425.0, 550.0, 675.0, 800.0}) {
    EnsembleSpec spec;
    spec.params = paper_params(rate);
    spec.particles = 1000;
    spec.seed = 2008 + static_cast<std::uint64_t>(rate);
    spec.t_grid = linspace(0.0, 1.5 * spec.params.rabi_period(), 151);
    const SeriesResult mc = run_ensemble(spec);
    const SeriesResult red = reduced_run(spec.params, 1.5, 151);
    for (std::size_t i = 0; i < spec.t_grid.size(); ++i) {
      const double err = i == 0 ? 0.0 : mc.p_left_err[i];
      const double dev = std::abs(mc.p_left[i] - red.p_left[i]);
      const double z = err > 0.0 ? dev / err : (dev <= 1e-12 ? 0.0 : 1e9);
      if (z > worst_z) {
        worst_z = z;
        worst_rate = rate;
      }
    }
  }
  report("3. cross-engine equivalence", worst_z <= 3.0,
         fmt("fig8 preset, M=1000: max |z| = %.2f (worst at tau_inv=%g/TR)",
             worst_z, worst_rate));
}

// --- 4. slow/fast reduction at desk scale ------------------------------------

void criterion_4(const DeskReport& desk) {
  const double off = std::abs(desk.peak_omega - desk.expected_omega);
  const bool ok = desk.max_population_gap <= 1e-3 && off <= desk.bin_width;
  report("4. reduction at desk scale", ok,
         fmt("max pop gap=%.2e (tol 1e-3); line at %.1f rad/s vs %.1f, "
             "offset %.2f bins",
             desk.max_population_gap, desk.peak_omega, desk.expected_omega,
             off / desk.bin_width));
}

// --- 5. short-time Zeno law ---------------------------------------------------

void criterion_5() {
  // The quadratic region only extends to t << 1/D, so the fit window is the
  // smaller of 0.01 T_R and 0.05/D.
  std::vector<double> coeffs;
  double worst_dev = 0.0;
  for (double alpha : {0.2, 0.4}) {
    for (double rate : {300.0, 800.0}) {
      EnsembleSpec spec;
      spec.params = paper_params(rate, alpha, alpha);
      const double x = alpha * alpha * rate;
      spec.particles = 1500;
      // Independent streams per combination, so the invariance check is not
      // common-mode.
      spec.seed = 505 + static_cast<std::uint64_t>(coeffs.size());
      spec.t_grid =
          linspace(0.0, std::min(0.01, 0.05 / x) * spec.params.rabi_period(), 26);
      const SeriesResult mc = run_ensemble(spec);
      double num = 0.0, den = 0.0;
      for (std::size_t i = 1; i < spec.t_grid.size(); ++i) {
        const double t2 = spec.t_grid[i] * spec.t_grid[i];
        num += (1.0 - mc.p_left[i]) * t2;
        den += t2 * t2;
      }
      const double omega2 = spec.params.rabi * spec.params.rabi;
      coeffs.push_back(num / den / omega2);
      worst_dev = std::max(worst_dev, std::abs(coeffs.back() - 1.0));
    }
  }
  double spread = 0.0;
  for (double a : coeffs)
    for (double b : coeffs) spread = std::max(spread, std::abs(a - b));
  const bool ok = worst_dev <= 0.05 && spread <= 0.05;
  report("5. short-time Zeno law", ok,
         fmt("c/Omega^2 = {%.3f, %.3f, %.3f, %.3f}, max dev %.3f, spread %.3f",
             coeffs[0], coeffs[1], coeffs[2], coeffs[3], worst_dev, spread));
}

// --- 6. case A accuracy -------------------------------------------------------

void criterion_6() {
  const double x = 48.0;
  const SeriesResult red = reduced_run(paper_params(x / 0.04), 3.0, 601);
  const std::vector<double> t_tr = red.t_tr();
  double max_rel = 0.0;
  for (std::size_t i = 0; i < t_tr.size(); ++i) {
    if (t_tr[i] < 1e-6 * x * x * x) continue;  // the xt >> 1 window
    const double ansatz = case_a_pl(t_tr[i], x, CaseAVariant::Stretched);
    max_rel =
        std::max(max_rel, std::abs(red.p_left[i] - ansatz) / red.p_left[i]);
  }
  const auto beta =
      stretched_exponent_fit(t_tr, red.p_left, 0.5, 1e-6 * x * x * x, 3.0);
  report("6. case A stretched accuracy", max_rel <= 0.10,
         fmt("x=48, t/x^3 >= 1e-6: max rel dev %.3f (tol 0.10); fitted "
             "exponent %.2f (informational, near the observed 0.3)",
             max_rel, beta ? *beta : -1.0));
}

// --- 7. scaling laws ----------------------------------------------------------

void criterion_7() {
  // Scaling collapse of the Monte Carlo bundles on the t/x^3 abscissa.
  struct Curve {
    double x;
    std::vector<double> t3, v;
  };
  std::vector<Curve> curves;
  int index = 0;
  for (double x : {32.0, 48.0, 56.0}) {
    for (double alpha : {0.2, 0.25, 0.4}) {
      EnsembleSpec spec;
      spec.params = paper_params(x / (alpha * alpha), alpha, alpha);
      spec.particles = 1500;
      spec.seed = 3010 + static_cast<std::uint64_t>(index++);
      spec.t_grid =
          linspace(0.0, 1e-5 * x * x * x * spec.params.rabi_period(), 121);
      const SeriesResult mc = run_ensemble(spec);
      Curve curve;
      curve.x = x;
      curve.v = mc.p_left;
      for (double t : mc.t_tr()) curve.t3.push_back(t / (x * x * x));
      curves.push_back(std::move(curve));
    }
  }
  double collapse = 0.0;
  ToleranceSpec tol;
  tol.resample = true;
  for (std::size_t a = 0; a < curves.size(); ++a)
    for (std::size_t b = a + 1; b < curves.size(); ++b)
      collapse = std::max(
          collapse, compare_series({curves[a].t3, curves[a].v, {}},
                                   {curves[b].t3, curves[b].v, {}}, tol)
                        .max_abs_dev);

  // Case A relaxation-time ratios on the reduced master.  The e^-1 crossing
  // at x = 56 lies past the N = 40 dissociation time, so the scaling
  // measurement uses a taller ladder that keeps the boundary out of reach.
  double t_relax[3];
  const double xs[3] = {32.0, 48.0, 56.0};
  for (int k = 0; k < 3; ++k) {
    ModelParams p = paper_params(xs[k] / 0.04);
    p.n_left = p.n_right = 160;
    const SeriesResult red = reduced_run(p, 16.0, 1601);
    const auto crossing = relaxation_time(red.t_tr(), red.p_left, 0.5);
    t_relax[k] = crossing ? *crossing : -1.0;
  }
  const double ratio_a1 = t_relax[1] / t_relax[0] / std::pow(48.0 / 32.0, 3);
  const double ratio_a2 = t_relax[2] / t_relax[1] / std::pow(56.0 / 48.0, 3);

  // Case C doubling on the reduced master (x is the case-local parameter).
  double t_c[2];
  const double xc[2] = {40.0, 80.0};
  for (int k = 0; k < 2; ++k) {
    const SeriesResult red =
        reduced_run(paper_params(2.0 * xc[k] / 0.16, 0.0, 0.4), 4.0, 2001);
    const auto crossing = relaxation_time(red.t_tr(), red.p_left, 0.0);
    t_c[k] = crossing ? *crossing : -1.0;
  }
  const double ratio_c = t_c[1] / t_c[0] / 2.0;

  const bool ok = collapse <= 0.05 && std::abs(ratio_a1 - 1.0) <= 0.20 &&
                  std::abs(ratio_a2 - 1.0) <= 0.20 &&
                  std::abs(ratio_c - 1.0) <= 0.20;
  report("7. scaling laws", ok,
         fmt("collapse=%.3f (tol 0.05); cubic ratios %+.1f%%, %+.1f%%; "
             "case C doubling %+.1f%% (tol 20%%)",
             collapse, 100.0 * (ratio_a1 - 1.0), 100.0 * (ratio_a2 - 1.0),
             100.0 * (ratio_c - 1.0)));
}

// --- 8. case B minimum --------------------------------------------------------

void criterion_8() {
  double minima[3];
  const double xs[3] = {10.0, 20.0, 30.0};
  bool depth_ok = true;
  std::string detail;
  for (int k = 0; k < 3; ++k) {
    // alpha_R = 0, case-local x = alpha_L^2 T_R/(2 tau)
    const SeriesResult red =
        reduced_run(paper_params(2.0 * xs[k] / 0.04, 0.2, 0.0), 1.2, 2401);
    double lowest = 2.0;
    for (double v : red.p_left) lowest = std::min(lowest, v);
    minima[k] = lowest;
    const double law = case_b_minimum(xs[k]);
    const double depth = 1.0 - law;  // 2.7/x
    const double dev = std::abs(lowest - law);
    if (dev > 0.10 * depth) depth_ok = false;
    detail += fmt("x=%g: min=%.4f law=%.4f dev/depth=%.0f%%  ", xs[k], lowest,
                  law, 100.0 * dev / depth);
  }
  const bool monotone = minima[1] > minima[0] && minima[2] > minima[1];
  report("8. case B minimum", depth_ok && monotone,
         detail + (monotone ? "(ordering ok)" : "(ordering violated)"));
  if (!depth_ok)
    std::printf(
        "       note: the trajectory, reduced-master and bridge engines agree\n"
        "       on these minima to ~2e-3 absolute; the printed 1 - 2.7/x law\n"
        "       itself sits 20-24%% of the dip depth away at x = 20, 30, so\n"
        "       the 10%%-of-depth gate cannot be met there.\n");
}

// --- 9. equilibrium -----------------------------------------------------------

void criterion_9() {
  // Symmetric run held below its dissociation time: x = 10 gives
  // T_d(refined) = N^2/(pi^2 x) = 16.2 Rabi periods.
  const SeriesResult red = reduced_run(paper_params(250.0), 16.0, 801);
  const double dev_sym = std::abs(red.p_left.back() - 0.5);
  bool tail_monotone = true;
  const std::vector<double> t_tr = red.t_tr();
  for (std::size_t i = 1; i < t_tr.size(); ++i)
    if (t_tr[i - 1] >= 4.0 && red.p_left[i] > red.p_left[i - 1] + 1e-9)
      tail_monotone = false;

  // Asymmetric couplings approach alpha_L/(alpha_L + alpha_R) = 2/3.
  const SeriesResult asym = reduced_run(paper_params(480.0, 0.2, 0.1), 6.0, 601);
  const double dev_asym = std::abs(asym.p_left.back() - 2.0 / 3.0);

  const bool ok = dev_sym <= 0.02 && dev_asym <= 0.02 && tail_monotone;
  report("9. equilibrium point", ok,
         fmt("|P_L(16TR)-1/2|=%.4f (x=10, T_d=16.2TR); |P_L(6TR)-2/3|=%.4f; "
             "tail %s",
             dev_sym, dev_asym, tail_monotone ? "monotone" : "NOT monotone"));
}

// --- 10. level structure --------------------------------------------------------

void criterion_10() {
  const ModelParams p = paper_params(800.0);
  const double raw =
      min_offresonant_gap(build_level_scheme(p, EnergyConvention::RawRotational));
  const double shifted =
      min_offresonant_gap(build_level_scheme(p, EnergyConvention::ShiftedGround));
  const double target = 2.8e9;
  const bool ok = std::abs(raw - target) <= 0.05 * target ||
                  std::abs(shifted - target) <= 0.05 * target;
  report("10. level-structure gap", ok,
         fmt("raw=%.3e rad/s (dev %+.1f%%), shifted=%.3e rad/s (dev %+.1f%%)",
             raw, 100.0 * (raw / target - 1.0), shifted,
             100.0 * (shifted / target - 1.0)));
}

}  // namespace

int main() {
  std::printf("zenocoll acceptance suite\n");
  const DeskReport desk = run_desk_validation();
  criterion_1(desk);
  criterion_2();
  criterion_3();
  criterion_4(desk);
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
