#include "model.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace zenocoll {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double ModelParams::rabi_period() const { return 2.0 * std::numbers::pi / rabi; }

void ModelParams::validate() const {
  if (n_left < 1) throw std::invalid_argument("n_left must be >= 1");
  if (n_right < 1) throw std::invalid_argument("n_right must be >= 1");
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  if (!(rabi > 0.0)) throw std::invalid_argument("rabi must be > 0");
  if (alpha_left < 0.0) throw std::invalid_argument("alpha_left must be >= 0");
  if (alpha_right < 0.0) throw std::invalid_argument("alpha_right must be >= 0");
  if (!(omega_left >= 0.0) || !(omega_right >= 0.0))
    throw std::invalid_argument("rotational frequencies must be >= 0");
}

double rotational_energy(double omega, int n, EnergyConvention convention) {
  const double raw = omega * static_cast<double>(n) * (n + 1.0);
  if (convention == EnergyConvention::RawRotational) return raw;
  return raw - 2.0 * omega;
}

LevelScheme build_level_scheme(const ModelParams& params,
                               EnergyConvention convention) {
  params.validate();
  LevelScheme scheme;
  scheme.convention = convention;
  scheme.energies_left.resize(params.n_left);
  scheme.energies_right.resize(params.n_right);
  for (int n = 1; n <= params.n_left; ++n)
    scheme.energies_left(n - 1) = rotational_energy(params.omega_left, n, convention);
  for (int n = 1; n <= params.n_right; ++n)
    scheme.energies_right(n - 1) = rotational_energy(params.omega_right, n, convention);
  return scheme;
}

double min_offresonant_gap(const LevelScheme& scheme) {
  const auto nl = scheme.energies_left.size();
  const auto nr = scheme.energies_right.size();
  if (nl < 2 || nr < 2) return kInf;
  double gap = kInf;
  for (Eigen::Index m = 1; m < nl; ++m)
    for (Eigen::Index n = 1; n < nr; ++n)
      gap = std::min(gap,
                     std::abs(scheme.energies_left(m) - scheme.energies_right(n)));
  return gap;
}

std::string TimescaleReport::summary() const {
  std::ostringstream os;
  os << "min off-resonant gap: " << gap << " rad/s\n"
     << "gap/Omega = " << ratio_rabi << " (" << (rabi_ok ? "ok" : "FAIL")
     << ", threshold " << threshold << ")\n"
     << "gap*tau   = " << ratio_collision << " ("
     << (collision_ok ? "ok" : "FAIL") << ", threshold " << threshold << ")\n"
     << "slow/fast separation: " << (passed() ? "valid" : "NOT valid");
  return os.str();
}

TimescaleReport validate_timescales(const ModelParams& params,
                                    const LevelScheme& scheme,
                                    double threshold) {
  TimescaleReport report;
  report.gap = min_offresonant_gap(scheme);
  report.threshold = threshold;
  report.ratio_rabi = params.rabi > 0.0 ? report.gap / params.rabi : kInf;
  report.ratio_collision = report.gap * params.tau;
  report.rabi_ok = report.ratio_rabi >= threshold;
  report.collision_ok = report.ratio_collision >= threshold;
  return report;
}

double scaling_parameter(const ModelParams& params, ScalingCase which) {
  const double tr = params.rabi_period();
  const double al2 = params.alpha_left * params.alpha_left;
  const double ar2 = params.alpha_right * params.alpha_right;
  switch (which) {
    case ScalingCase::Symmetric:
      return 0.5 * (al2 + ar2) * tr / params.tau;
    case ScalingCase::LeftOnly:
      return 0.5 * al2 * tr / params.tau;
    case ScalingCase::RightOnly:
      return 0.5 * ar2 * tr / params.tau;
  }
  return 0.0;
}

double ladder_x(const ModelParams& params, bool left) {
  const double a = left ? params.alpha_left : params.alpha_right;
  return a * a * params.rabi_period() / params.tau;
}

double dissociation_time_tr(const ModelParams& params, bool refined) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  double best = kInf;
  for (bool left : {true, false}) {
    const double x = ladder_x(params, left);
    if (x <= 0.0) continue;
    const double n = left ? params.n_left : params.n_right;
    const double td = n * n / (refined ? pi2 * x : x);
    best = std::min(best, td);
  }
  return best;
}

Eigen::MatrixXd coupling_matrix(int n) {
  if (n < 1) throw std::invalid_argument("coupling_matrix: n must be >= 1");
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    v(i, i + 1) = 1.0;
    v(i + 1, i) = 1.0;
  }
  return v;
}

Eigen::MatrixXd OperatorSet::v_combined(double alpha_left,
                                        double alpha_right) const {
  const auto nl = v_left.rows();
  const auto nr = v_right.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(nl + nr, nl + nr);
  v.topLeftCorner(nl, nl) = alpha_left * v_left;
  v.bottomRightCorner(nr, nr) = alpha_right * v_right;
  return v;
}

OperatorSet build_operators(const ModelParams& params,
                            const LevelScheme& scheme) {
  OperatorSet ops;
  ops.h0_diagonal.resize(params.n_left + params.n_right);
  ops.h0_diagonal.head(params.n_left) = scheme.energies_left;
  ops.h0_diagonal.tail(params.n_right) = scheme.energies_right;
  ops.rabi_i = 0;
  ops.rabi_j = params.n_left;
  ops.v_left = coupling_matrix(params.n_left);
  ops.v_right = coupling_matrix(params.n_right);
  return ops;
}

}  // namespace zenocoll
