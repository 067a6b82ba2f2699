#pragma once

#include <vector>

namespace zenocoll {

// e^{-t} I_n(t) for n >= 0, t >= 0.  Overflow-free for t up to 1e6 and
// accurate to ~1e-13 relative: power series in the scaled form for small
// arguments, normalized downward recurrence otherwise.
double bessel_i_scaled(int n, double t);

// All orders 0..n_max at a single argument (one downward recurrence pass).
std::vector<double> bessel_i_scaled_all(int n_max, double t);

// Error function of imaginary argument, Phi(z) = (2/sqrt(pi)) int_0^z e^{x^2} dx,
// for 0 <= z <= 25 (e^{z^2} overflows shortly beyond; guarded).
double erfi(double z);

// e^{-z^2} Phi(z), valid for all z >= 0 (asymptotic series past the guard).
double erfi_scaled(double z);

}  // namespace zenocoll
