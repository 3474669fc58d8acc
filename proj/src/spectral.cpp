#include "licrk/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "licrk/errors.hpp"

namespace licrk {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft(std::span<std::complex<double>> data, bool inverse) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) throw Error(Errc::config, "fft: size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> w = std::polar(1.0, angle * static_cast<double>(k));
        const std::complex<double> u = data[i + k];
        const std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
      }
    }
  }
  if (inverse)
    for (auto& x : data) x /= static_cast<double>(n);
}

long wavenumber_index(std::size_t j, std::size_t n) {
  return j <= n / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
}

namespace {

template <class Multiplier>
Vector apply_multiplier(std::span<const double> y, Multiplier&& mult) {
  const std::size_t n = y.size();
  std::vector<std::complex<double>> z(y.begin(), y.end());
  fft(z, false);
  for (std::size_t j = 0; j < n; ++j) z[j] *= mult(j, wavenumber_index(j, n));
  fft(z, true);
  Vector out(n);
  double scale = 0.0;
  for (const auto& v : z) scale = std::max(scale, std::abs(v));
  for (std::size_t j = 0; j < n; ++j) {
    // real input with a Hermitian multiplier: anything beyond roundoff is a bug
    if (std::abs(z[j].imag()) > 1e-12 * (1.0 + scale))
      throw std::logic_error("spectral multiplier produced a non-real result");
    out[j] = z[j].real();
  }
  return out;
}

}  // namespace

Vector spectral_diff(std::span<const double> y, int order, double length) {
  if (order != 1 && order != 3) throw Error(Errc::invalid_argument, "spectral_diff: order must be 1 or 3");
  const std::size_t n = y.size();
  const double base = 2.0 * std::numbers::pi / length;
  return apply_multiplier(y, [&](std::size_t j, long idx) -> std::complex<double> {
    if (n % 2 == 0 && j == n / 2) return 0.0;
    const std::complex<double> ik(0.0, base * static_cast<double>(idx));
    return order == 1 ? ik : ik * ik * ik;
  });
}

Vector expA_apply(double t, std::span<const double> y, double length) {
  const std::size_t n = y.size();
  const double base = 2.0 * std::numbers::pi / length;
  return apply_multiplier(y, [&](std::size_t j, long idx) -> std::complex<double> {
    if (n % 2 == 0 && j == n / 2) return 1.0;
    const double kappa = base * static_cast<double>(idx);
    // -(i kappa)^3 = i kappa^3
    return std::polar(1.0, t * kappa * kappa * kappa);
  });
}

}  // namespace licrk
