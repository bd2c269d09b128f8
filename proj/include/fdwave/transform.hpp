#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "fdwave/spectral_state.hpp"

namespace fdwave {

namespace detail {

/// exp(sign * 2*pi*i*m/N) for m = 0..N-1.
template <typename Scalar>
std::vector<std::complex<Scalar>> roots_of_unity(Eigen::Index n, int sign) {
  std::vector<std::complex<Scalar>> w(static_cast<std::size_t>(n));
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  for (Eigen::Index m = 0; m < n; ++m) {
    const Scalar angle = two_pi * static_cast<Scalar>(m) / static_cast<Scalar>(n);
    w[static_cast<std::size_t>(m)] = {std::cos(angle), sign * std::sin(angle)};
  }
  return w;
}

}  // namespace detail

/// Fourier coefficients c_k = (1/N) sum_j u_j exp(-2 pi i k j / N), |k| <= K_max,
/// i.e. the rectangle-rule value of (1/L) int_0^L u exp(-2 pi i k x/L) dx.
/// Modes -k are written as conjugates of +k, so the result is exactly Hermitian.
template <typename Scalar>
CoeffVector<Scalar> analyze(const BasicGridField<Scalar>& field, int k_max) {
  const Eigen::Index n = field.size();
  if (k_max < 1) throw InvalidInput("K_max must be a positive integer");
  if (n < 2 * static_cast<Eigen::Index>(k_max) + 1)
    throw TruncationError("grid has fewer than 2*K_max+1 points");
  const auto& u = field.samples();
  for (Eigen::Index j = 0; j < n; ++j)
    if (!std::isfinite(u[j])) throw InvalidInput("non-finite grid sample");

  const auto w = detail::roots_of_unity<Scalar>(n, -1);
  CoeffVector<Scalar> c(2 * static_cast<Eigen::Index>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    std::complex<Scalar> sum = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      sum += u[j] * w[static_cast<std::size_t>((static_cast<Eigen::Index>(k) * j) % n)];
    sum /= static_cast<Scalar>(n);
    if (k == 0) sum.imag(Scalar(0));
    c[mode_slot(k, k_max)] = sum;
    c[mode_slot(-k, k_max)] = std::conj(sum);
  }
  return c;
}

/// Displacement and velocity samples combined into one state.
template <typename Scalar>
BasicSpectralState<Scalar> analyze(const BasicGridField<Scalar>& u, const BasicGridField<Scalar>& v,
                                   int k_max) {
  if (u.length() != v.length() || u.size() != v.size())
    throw DimensionMismatch("displacement and velocity grids differ");
  return BasicSpectralState<Scalar>(u.length(), k_max, analyze(u, k_max), analyze(v, k_max));
}

/// Samples sum_k c_k exp(2 pi i k x_j / L) on N uniform points. The imaginary
/// residue of the sum must stay below 1e-12 times the coefficient l1 mass.
template <typename Scalar>
BasicGridField<Scalar> synthesize(const CoeffVector<Scalar>& c, Scalar length, Eigen::Index n) {
  const int k_max = k_max_from_size(c.size());
  if (n < c.size()) throw TruncationError("grid has fewer than 2*K_max+1 points");
  if (hermitian_defect(c) > Scalar(kHermitianTolerance))
    throw RealityError("coefficients violate Hermitian symmetry");

  const auto w = detail::roots_of_unity<Scalar>(n, +1);
  const Scalar mass = c.cwiseAbs().sum();
  const Scalar allowed = Scalar(kHermitianTolerance) * mass;
  RealVector<Scalar> samples(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    std::complex<Scalar> sum = 0;
    for (int k = -k_max; k <= k_max; ++k) {
      const Eigen::Index m = ((static_cast<Eigen::Index>(k) * j) % n + n) % n;
      sum += c[mode_slot(k, k_max)] * w[static_cast<std::size_t>(m)];
    }
    if (std::abs(sum.imag()) > allowed)
      throw RealityError("synthesized field has a non-negligible imaginary part");
    samples[j] = sum.real();
  }
  return BasicGridField<Scalar>(length, std::move(samples));
}

template <typename Scalar>
BasicGridField<Scalar> synthesize_u(const BasicSpectralState<Scalar>& s, Eigen::Index n) {
  return synthesize(s.u_hat(), s.length(), n);
}

template <typename Scalar>
BasicGridField<Scalar> synthesize_v(const BasicSpectralState<Scalar>& s, Eigen::Index n) {
  return synthesize(s.v_hat(), s.length(), n);
}

}  // namespace fdwave
