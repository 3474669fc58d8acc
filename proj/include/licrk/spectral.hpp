#pragma once

#include <complex>
#include <span>
#include <vector>

#include "licrk/linalg.hpp"

namespace licrk {

/// In-place radix-2 FFT; size must be a power of two. `inverse` applies the
/// conjugate transform and the 1/n scaling.
void fft(std::span<std::complex<double>> data, bool inverse);

bool is_power_of_two(std::size_t n);

/// Signed wavenumber index of FFT slot j: 0..n/2 then -n/2+1..-1.
long wavenumber_index(std::size_t j, std::size_t n);

/// Fourier-spectral derivative of order 1 or 3 of a periodic grid function on
/// a domain of length `length`. The Nyquist coefficient is dropped.
Vector spectral_diff(std::span<const double> y, int order, double length);

/// exp(t A) with A = -(d/dx)^3 in Fourier space: mode j is multiplied by
/// exp(-t (i kappa_j)^3). Unitary.
Vector expA_apply(double t, std::span<const double> y, double length);

}  // namespace licrk
