#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

#include "fdwave/spectral_state.hpp"

namespace fdwave {

// Each mode obeys u'' + phi u' + omega^2 u = 0 with omega = 2 pi k / L.
// The closed-form solution is linear in (u0, v0) with real coefficients, so
// it is stored as a real 2x2 transfer matrix M(t):
//   [u(t)]   [m00 m01] [u0]
//   [v(t)] = [m10 m11] [v0]
// and v(t) is the exact time derivative of u(t).

enum class DampingRegime { Overdamped, Underdamped, Critical };

inline const char* to_string(DampingRegime r) {
  switch (r) {
    case DampingRegime::Overdamped: return "overdamped";
    case DampingRegime::Underdamped: return "underdamped";
    case DampingRegime::Critical: return "critical";
  }
  return "?";
}

template <typename Scalar>
struct DampingCase {
  DampingRegime regime;
  Scalar delta;  ///< phi^2 - (4 pi k / L)^2
};

template <typename Scalar>
struct CharacteristicRoots {
  std::complex<Scalar> plus;
  std::complex<Scalar> minus;
};

template <typename Scalar>
using TransferMatrix = Eigen::Matrix<Scalar, 2, 2>;

template <typename Scalar>
struct ModeValue {
  std::complex<Scalar> u;
  std::complex<Scalar> v;
};

namespace detail {

template <typename Scalar>
void require_mode_args(Scalar phi, Scalar length) {
  if (!(std::isfinite(phi) && phi >= Scalar(0)))
    throw PreconditionError("damping multiplier must be finite and nonnegative");
  require_length(length);
}

}  // namespace detail

/// Band half-width around Delta = 0 inside which a mode counts as critical.
template <typename Scalar>
Scalar critical_band(int k, Scalar phi, Scalar length) {
  const Scalar two_omega = Scalar(2) * wavenumber(k, length);
  return Scalar(1e-12) * std::max(phi * phi, two_omega * two_omega);
}

template <typename Scalar>
DampingCase<Scalar> classify(int k, Scalar phi, Scalar length) {
  detail::require_mode_args(phi, length);
  const Scalar two_omega = Scalar(2) * wavenumber(k, length);
  const Scalar delta = phi * phi - two_omega * two_omega;
  const Scalar band = critical_band(k, phi, length);
  if (delta > band) return {DampingRegime::Overdamped, delta};
  if (delta < -band) return {DampingRegime::Underdamped, delta};
  return {DampingRegime::Critical, delta};
}

/// Roots of lambda^2 + phi lambda + omega^2 = 0. Inside the critical band the
/// double root -phi/2 is returned for both.
template <typename Scalar>
CharacteristicRoots<Scalar> characteristic_roots(int k, Scalar phi, Scalar length) {
  using C = std::complex<Scalar>;
  const auto c = classify(k, phi, length);
  const Scalar omega = wavenumber(k, length);
  switch (c.regime) {
    case DampingRegime::Overdamped: {
      const Scalar s = std::sqrt(c.delta);
      const Scalar minus = -(phi + s) / Scalar(2);
      // product of the roots is omega^2; avoids cancellation in (-phi + s)/2
      const Scalar plus = omega * omega / minus;
      return {C(plus == Scalar(0) ? Scalar(0) : plus), C(minus)};
    }
    case DampingRegime::Underdamped: {
      const Scalar beta = std::sqrt(-c.delta) / Scalar(2);
      return {C(-phi / Scalar(2), beta), C(-phi / Scalar(2), -beta)};
    }
    case DampingRegime::Critical:
    default:
      return {C(-phi / Scalar(2)), C(-phi / Scalar(2))};
  }
}

/// Exact propagator of one mode over time t >= 0.
template <typename Scalar>
TransferMatrix<Scalar> transfer_matrix(int k, Scalar phi, Scalar length, Scalar t) {
  if (!(std::isfinite(t) && t >= Scalar(0)))
    throw PreconditionError("propagation time must be finite and nonnegative");
  const auto c = classify(k, phi, length);
  const Scalar omega = wavenumber(k, length);
  const Scalar omega_sq = omega * omega;
  const Scalar half_phi = phi / Scalar(2);
  TransferMatrix<Scalar> m;

  switch (c.regime) {
    case DampingRegime::Overdamped: {
      // Two-exponential form in lambda_+ >= lambda_-; g = (1 - e^{-s t}) / s
      // is bounded by t, so nothing overflows for large t.
      const Scalar s = std::sqrt(c.delta);
      const Scalar lambda_minus = -(phi + s) / Scalar(2);
      const Scalar lambda_plus = omega_sq / lambda_minus;
      const Scalar e = std::exp(lambda_plus * t);
      const Scalar g = -std::expm1(-s * t) / s;
      m << e * (Scalar(1) - lambda_plus * g), e * g,
           -omega_sq * e * g, e * (Scalar(1) + lambda_minus * g);
      break;
    }
    case DampingRegime::Underdamped: {
      const Scalar beta = std::sqrt(-c.delta) / Scalar(2);
      const Scalar e = std::exp(-half_phi * t);
      const Scalar co = std::cos(beta * t);
      const Scalar sinc = std::sin(beta * t) / beta;
      m << e * (co + half_phi * sinc), e * sinc,
           -omega_sq * e * sinc, e * (co - half_phi * sinc);
      break;
    }
    case DampingRegime::Critical:
    default: {
      const Scalar e = std::exp(-half_phi * t);
      m << e * (Scalar(1) + half_phi * t), e * t,
           -half_phi * half_phi * e * t, e * (Scalar(1) - half_phi * t);
      break;
    }
  }
  return m;
}

template <typename Scalar>
ModeValue<Scalar> propagate_mode(std::complex<Scalar> u0, std::complex<Scalar> v0, int k,
                                 Scalar phi, Scalar length, Scalar t) {
  if (!std::isfinite(u0.real()) || !std::isfinite(u0.imag()) || !std::isfinite(v0.real()) ||
      !std::isfinite(v0.imag()))
    throw InvalidInput("non-finite initial mode data");
  if (t == Scalar(0)) return {u0, v0};
  const auto m = transfer_matrix(k, phi, length, t);
  return {m(0, 0) * u0 + m(0, 1) * v0, m(1, 0) * u0 + m(1, 1) * v0};
}

/// Evolves every mode of `state` by time t under the damping filter.
template <typename Scalar>
BasicSpectralState<Scalar> propagate_state(const BasicSpectralState<Scalar>& state,
                                           const BasicFilterSpectrum<Scalar>& filter, Scalar t) {
  require_compatible(state, filter);
  if (!(std::isfinite(t) && t >= Scalar(0)))
    throw PreconditionError("propagation time must be finite and nonnegative");
  if (t == Scalar(0)) return state;
  const int k_max = state.k_max();
  CoeffVector<Scalar> u(state.size()), v(state.size());
  for (int k = -k_max; k <= k_max; ++k) {
    const auto i = mode_slot(k, k_max);
    const auto m = transfer_matrix(k, filter(k), state.length(), t);
    u[i] = m(0, 0) * state.u_hat()[i] + m(0, 1) * state.v_hat()[i];
    v[i] = m(1, 0) * state.u_hat()[i] + m(1, 1) * state.v_hat()[i];
  }
  return BasicSpectralState<Scalar>(state.length(), k_max, std::move(u), std::move(v));
}

}  // namespace fdwave
