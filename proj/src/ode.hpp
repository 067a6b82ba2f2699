#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace zenocoll {

struct OdeOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  std::uint64_t max_steps = 200'000'000;
};

// Embedded Dormand-Prince 5(4) with error-per-step control.  Steps are
// clipped so every entry of t_grid is hit exactly; on_sample(i, t, y) fires
// at each grid point (including t_grid[0] when it equals t0).  post_step, if
// given, may project the accepted state back onto a constraint manifold
// (e.g. re-Hermitization).  Throws std::runtime_error when max_steps is
// exceeded.
template <class Vec, class Rhs, class Obs>
void integrate_dopri5(Rhs&& rhs, Vec y, double t0, std::span<const double> t_grid,
                      const OdeOptions& opt, Obs&& on_sample,
                      const std::function<void(Vec&)>& post_step = {}) {
  if (t_grid.empty()) return;
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument("integrate_dopri5: t_grid must be strictly increasing");
  if (t_grid.front() < t0)
    throw std::invalid_argument("integrate_dopri5: grid starts before t0");

  double t = t0;
  std::size_t next = 0;
  if (t_grid[0] == t0) {
    on_sample(std::size_t{0}, t0, y);
    next = 1;
    if (next == t_grid.size()) return;
  }
  const double t_end = t_grid.back();

  Vec k1 = rhs(t, y);
  Vec k2 = k1, k3 = k1, k4 = k1, k5 = k1, k6 = k1, k7 = k1;
  Vec ytmp = y, ynew = y, yerr = y;

  // Conservative initial step from the scale of the first derivative.
  double h;
  {
    const double d0 = y.cwiseAbs().maxCoeff() + opt.atol;
    const double d1 = k1.cwiseAbs().maxCoeff();
    h = d1 > 0.0 ? 0.01 * d0 / d1 : 0.01 * (t_end - t0);
    h = std::min(h, t_end - t0);
  }

  std::uint64_t steps = 0;
  while (t < t_end) {
    if (++steps > opt.max_steps)
      throw std::runtime_error(
          "integrate_dopri5: step budget exceeded (" + std::to_string(opt.max_steps) +
          " steps); the problem is too stiff for this integrator configuration");
    bool hit_sample = false;
    const double h_free = h;  // step the controller actually proposed
    if (t + h >= t_grid[next]) {
      h = t_grid[next] - t;
      hit_sample = true;
    }

    k1 = rhs(t, y);
    ytmp = y + h * (1.0 / 5.0) * k1;
    k2 = rhs(t + h / 5.0, ytmp);
    ytmp = y + h * ((3.0 / 40.0) * k1 + (9.0 / 40.0) * k2);
    k3 = rhs(t + 3.0 * h / 10.0, ytmp);
    ytmp = y + h * ((44.0 / 45.0) * k1 - (56.0 / 15.0) * k2 + (32.0 / 9.0) * k3);
    k4 = rhs(t + 4.0 * h / 5.0, ytmp);
    ytmp = y + h * ((19372.0 / 6561.0) * k1 - (25360.0 / 2187.0) * k2 +
                    (64448.0 / 6561.0) * k3 - (212.0 / 729.0) * k4);
    k5 = rhs(t + 8.0 * h / 9.0, ytmp);
    ytmp = y + h * ((9017.0 / 3168.0) * k1 - (355.0 / 33.0) * k2 +
                    (46732.0 / 5247.0) * k3 + (49.0 / 176.0) * k4 -
                    (5103.0 / 18656.0) * k5);
    k6 = rhs(t + h, ytmp);
    ynew = y + h * ((35.0 / 384.0) * k1 + (500.0 / 1113.0) * k3 +
                    (125.0 / 192.0) * k4 - (2187.0 / 6784.0) * k5 +
                    (11.0 / 84.0) * k6);
    k7 = rhs(t + h, ynew);
    // Difference between the 5th- and 4th-order solutions.
    yerr = h * ((71.0 / 57600.0) * k1 - (71.0 / 16695.0) * k3 +
                (71.0 / 1920.0) * k4 - (17253.0 / 339200.0) * k5 +
                (22.0 / 525.0) * k6 - (1.0 / 40.0) * k7);

    double err = 0.0;
    {
      const auto ea = yerr.cwiseAbs();
      const auto sc = y.cwiseAbs().cwiseMax(ynew.cwiseAbs());
      for (Eigen::Index i = 0; i < ea.size(); ++i) {
        const double r = ea(i) / (opt.atol + opt.rtol * sc(i));
        err += r * r;
      }
      err = std::sqrt(err / static_cast<double>(ea.size()));
    }

    const double factor =
        err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
    if (err <= 1.0) {
      t += h;
      y.swap(ynew);
      if (post_step) post_step(y);
      if (hit_sample) {
        on_sample(next, t, y);
        ++next;
        if (next == t_grid.size()) return;
      }
      // A grid-clipped step says nothing about the controller's step size;
      // resume from the pre-clip proposal.
      h = hit_sample ? h_free : h * factor;
    } else {
      h *= factor;
    }
    h = std::min(h, t_end - t);
  }
}

}  // namespace zenocoll
