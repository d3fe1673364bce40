/// \file
/// Minimal iterative radix-2 FFT.  The demo grids are pinned to power-of-two
/// sizes, and keeping the transform self-contained makes every spectral
/// operation a pure function (safe under concurrent parameter sweeps).

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace metriplex {

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

namespace detail {

inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const int n = static_cast<int>(a.size());
  if (!is_power_of_two(n)) throw std::invalid_argument("fft: size must be a power of two");
  // bit reversal
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double pi = 3.14159265358979323846;
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * pi / len * (inverse ? 1.0 : -1.0);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (int k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse)
    for (auto& x : a) x /= static_cast<double>(n);
}

}  // namespace detail

inline std::vector<std::complex<double>> fft(std::vector<std::complex<double>> a) {
  detail::fft_inplace(a, false);
  return a;
}

inline std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> a) {
  detail::fft_inplace(a, true);
  return a;
}

}  // namespace metriplex
