#include "special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zenocoll {

namespace {

// Scaled power series: e^{-t} (t/2)^n/n! * sum_k (t^2/4)^k / (k! (n+k)_k).
// Converges fast for t below ~20; the prefactor is evaluated in log space so
// large n cannot overflow.
double scaled_series(int n, double t) {
  const double log_pref = -t + n * std::log(0.5 * t) - std::lgamma(n + 1.0);
  if (log_pref < -745.0) return 0.0;  // below the double underflow floor
  const double q = 0.25 * t * t;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 400; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return std::exp(log_pref) * sum;
}

// Downward (Miller) recurrence normalized with I_0 + 2 sum_k I_k = e^t,
// which in scaled form is exactly 1.  Fills orders 0..n_max.
std::vector<double> scaled_downward(int n_max, double t) {
  // Start far enough above both n_max and the diffusive spread sqrt(t) that
  // the seeded tail is negligible after normalization.
  const int start =
      n_max + static_cast<int>(std::ceil(std::sqrt(90.0 * t))) + 40;
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  double above = 0.0;      // i_{k+1}
  double current = 1e-30;  // i_k, arbitrary seed scale
  // Compensated summation: the norm gathers ~sqrt(90 t) positive terms and
  // naive accumulation would cost ~1e-12 relative at t = 1e6.
  double norm = 0.0, comp = 0.0;
  auto add = [&norm, &comp](double v) {
    const double y = v - comp;
    const double s = norm + y;
    comp = (s - norm) - y;
    norm = s;
  };
  for (int k = start; k >= 0; --k) {
    if (k <= n_max) out[static_cast<std::size_t>(k)] = current;
    add(k == 0 ? current : 2.0 * current);
    const double below = above + (2.0 * k / t) * current;
    above = current;
    current = below;
    if (std::abs(current) > 1e250) {  // rescale before anything overflows
      const double s = 1e-250;
      current *= s;
      above *= s;
      norm *= s;
      comp *= s;
      for (double& v : out) v *= s;
    }
  }
  const double inv = 1.0 / norm;
  for (double& v : out) v *= inv;
  return out;
}

}  // namespace

double bessel_i_scaled(int n, double t) {
  if (n < 0) throw std::invalid_argument("bessel_i_scaled: order must be >= 0");
  if (t < 0.0) throw std::invalid_argument("bessel_i_scaled: argument must be >= 0");
  if (t == 0.0) return n == 0 ? 1.0 : 0.0;
  if (t < 20.0) return scaled_series(n, t);
  return scaled_downward(n, t)[static_cast<std::size_t>(n)];
}

std::vector<double> bessel_i_scaled_all(int n_max, double t) {
  if (n_max < 0) throw std::invalid_argument("bessel_i_scaled_all: n_max must be >= 0");
  if (t < 0.0) throw std::invalid_argument("bessel_i_scaled_all: argument must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (t == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (t < 20.0) {
    for (int n = 0; n <= n_max; ++n) out[static_cast<std::size_t>(n)] = scaled_series(n, t);
    return out;
  }
  return scaled_downward(n_max, t);
}

double erfi(double z) {
  if (z < 0.0) throw std::invalid_argument("erfi: z must be >= 0");
  if (z > 25.0)
    throw std::domain_error("erfi: overflow guard (z > 25); use erfi_scaled");
  // All-positive series, no cancellation: sum_k z^{2k+1} / (k! (2k+1)).
  const double z2 = z * z;
  double term = z;
  double sum = z;
  for (int k = 1; k < 2000; ++k) {
    term *= z2 / k;
    const double contrib = term / (2.0 * k + 1.0);
    sum += contrib;
    if (contrib < 1e-17 * sum) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

double erfi_scaled(double z) {
  if (z < 0.0) throw std::invalid_argument("erfi_scaled: z must be >= 0");
  if (z <= 25.0) return std::exp(-z * z) * erfi(z);
  // Asymptotic: e^{-z^2} Phi(z) ~ (1/(z sqrt(pi))) sum_k (2k-1)!!/(2z^2)^k.
  const double w = 2.0 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 30; ++k) {
    term *= (2.0 * k - 1.0) / w;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / (z * std::sqrt(std::numbers::pi));
}

}  // namespace zenocoll
