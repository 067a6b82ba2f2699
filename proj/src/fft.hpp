#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace zenocoll {

// In-place iterative radix-2 FFT; size must be a power of two.
inline void fft_radix2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fft_radix2: size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

struct SpectralPeak {
  double omega = 0.0;      // rad/s, signed
  double magnitude = 0.0;
  double bin_width = 0.0;  // 2*pi / (N*dt)
};

// Dominant angular frequency of a uniformly sampled complex signal.  The
// mean is removed first so a quasi-static offset cannot mask the line.
inline SpectralPeak dominant_frequency(std::vector<std::complex<double>> signal,
                                       double dt) {
  const std::size_t n = signal.size();
  if (n < 4 || dt <= 0.0)
    throw std::invalid_argument("dominant_frequency: bad input");
  std::complex<double> mean(0.0, 0.0);
  for (const auto& z : signal) mean += z;
  mean /= static_cast<double>(n);
  for (auto& z : signal) z -= mean;
  fft_radix2(signal);

  SpectralPeak peak;
  peak.bin_width = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
  std::size_t best = 0;
  for (std::size_t m = 0; m < n; ++m)
    if (std::abs(signal[m]) > peak.magnitude) {
      peak.magnitude = std::abs(signal[m]);
      best = m;
    }
  const double signed_m = best <= n / 2 ? static_cast<double>(best)
                                        : static_cast<double>(best) - static_cast<double>(n);
  peak.omega = signed_m * peak.bin_width;
  return peak;
}

}  // namespace zenocoll
