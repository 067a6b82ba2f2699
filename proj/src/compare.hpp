#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zenocoll {

// Parsed from a comma-separated list, e.g.
//   "maxabs=0.05,zmax=3,resample,window=0.1:1.5,rescale=x3,exponent,
//    equilibrium=0.5,xa=32,xb=48"
// Unknown keys are rejected.
struct ToleranceSpec {
  std::optional<double> max_abs;
  std::optional<double> max_rel;
  std::optional<double> z_max;
  bool resample = false;
  bool rescale_x3 = false;  // divide each abscissa by its series' x^3
  double x_a = 0.0, x_b = 0.0;
  std::optional<std::pair<double, double>> window;  // in abscissa units
  bool fit_exponent = false;
  std::optional<double> equilibrium;  // enables T_relax estimates

  static ToleranceSpec parse(const std::string& text);
};

struct ComparisonReport {
  std::size_t n_points = 0;
  double max_abs_dev = 0.0;
  double max_rel_dev = 0.0;
  double max_z = 0.0;
  std::optional<double> exponent_a, exponent_b;
  std::optional<double> t_relax_a, t_relax_b;
  bool passed = true;

  std::string text() const;
  std::string json() const;
};

struct SeriesView {
  std::span<const double> t;       // abscissa (t/T_R for curve files)
  std::span<const double> value;
  std::span<const double> stderr_;  // may be empty
};

// Aligns b onto a's grid (exact match required unless resample is set),
// applies the window, computes deviation metrics and the optional fits, and
// evaluates the declared tolerances.
ComparisonReport compare_series(const SeriesView& a, const SeriesView& b,
                                const ToleranceSpec& tol);

// Linear interpolation onto x (x must lie inside [xs.front(), xs.back()]).
double linear_interp(std::span<const double> xs, std::span<const double> ys,
                     double x);

// First crossing of (v - equilibrium)/(v0 - equilibrium) below 1/e, located
// by linear interpolation of the log excess; nullopt when the series never
// crosses.
std::optional<double> relaxation_time(std::span<const double> t,
                                      std::span<const double> v,
                                      double equilibrium);

// Least-squares fit of v(t) ~ equilibrium + A exp(-c t^beta) on the window,
// scanning beta with the linear pair (log A, c) solved exactly.  Returns
// beta.
std::optional<double> stretched_exponent_fit(std::span<const double> t,
                                             std::span<const double> v,
                                             double equilibrium,
                                             double t_min, double t_max);

}  // namespace zenocoll
