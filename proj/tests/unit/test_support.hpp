#pragma once

// Helpers shared by the unit tests. The oracles here are deliberately naive
// (long double, direct summation) and do not call into the library paths
// they are used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "fdwave/spectral_state.hpp"

namespace fdwave::testing {

using cld = std::complex<long double>;
inline constexpr long double kPiL = std::numbers::pi_v<long double>;

inline SpectralState random_hermitian_state(std::mt19937_64& rng, double length, int k_max,
                                            bool with_velocity = true, bool zero_mean = false) {
  std::normal_distribution<double> n(0.0, 1.0);
  SpectralState s(length, k_max);
  for (int k = 0; k <= k_max; ++k) {
    const double scale = 1.0 / (1.0 + k);
    std::complex<double> u{n(rng) * scale, k == 0 ? 0.0 : n(rng) * scale};
    std::complex<double> v{n(rng) * scale, k == 0 ? 0.0 : n(rng) * scale};
    if (!with_velocity) v = 0.0;
    if (zero_mean && k == 0) u = v = 0.0;
    s.set_mode(k, u, v);
  }
  return s;
}

/// Filter mixing all three damping regimes (for L = 1): undamped, weak,
/// critical at |k| = 1, and overdamped at |k| = 2.
inline FilterSpectrum mixed_filter(int k_max) {
  return FilterSpectrum::from_function(k_max, [](int k) {
    switch (k % 5) {
      case 0: return 0.0;
      case 1: return 4.0 * std::numbers::pi * k;  // critical
      case 2: return 60.0 * k;                    // overdamped
      case 3: return 0.7;
      default: return 2.5;
    }
  });
}

/// sum_k w(k) |c_k|^2 in long double.
template <typename W>
long double weighted_sum_ld(const CoeffVector<double>& c, W weight) {
  const int k_max = k_max_from_size(c.size());
  long double sum = 0;
  for (int k = -k_max; k <= k_max; ++k) {
    const cld z(c[mode_slot(k, k_max)].real(), c[mode_slot(k, k_max)].imag());
    sum += weight(k) * std::norm(z);
  }
  return sum;
}

}  // namespace fdwave::testing
