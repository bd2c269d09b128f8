#pragma once

#include "fdwave/spectral_state.hpp"

// Norms use the plain coefficient sum sum_k w_k |c_k|^2 with no factor of L.
// For L != 1 this is the integral norm divided by L.

namespace fdwave {

template <typename Scalar>
Scalar l2_norm_sq(const CoeffVector<Scalar>& c) {
  return c.squaredNorm();
}

/// sum_k (1 + (2 pi k / L)^2) |c_k|^2
template <typename Scalar>
Scalar h1_norm_sq(const CoeffVector<Scalar>& c, Scalar length) {
  const int k_max = k_max_from_size(c.size());
  Scalar sum = 0;
  for (int k = -k_max; k <= k_max; ++k) {
    const Scalar w = wavenumber(k, length);
    sum += (Scalar(1) + w * w) * std::norm(c[mode_slot(k, k_max)]);
  }
  return sum;
}

template <typename Scalar>
Scalar h1_norm_sq(const BasicSpectralState<Scalar>& s) {
  return h1_norm_sq(s.u_hat(), s.length());
}

/// ||u||_{H^1}^2 + ||v||_{L^2}^2
template <typename Scalar>
Scalar energy_norm_sq(const BasicSpectralState<Scalar>& s) {
  return h1_norm_sq(s.u_hat(), s.length()) + l2_norm_sq(s.v_hat());
}

/// Coefficient-space inner product sum_k a_k conj(b_k).
template <typename Scalar>
std::complex<Scalar> inner(const CoeffVector<Scalar>& a, const CoeffVector<Scalar>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("inner product of different sizes");
  return b.dot(a);  // Eigen conjugates the left operand
}

}  // namespace fdwave
