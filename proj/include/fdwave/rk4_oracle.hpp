#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

#include "fdwave/errors.hpp"

// Fixed-step classical RK4 for one Fourier mode, written against the mode ODE
// directly. It must not use anything from propagator.hpp: it exists to check it.

namespace fdwave::oracle {

/// Largest step accepted for a mode with angular frequency `omega` and damping `phi`.
template <typename Scalar>
Scalar stability_bound(Scalar omega, Scalar phi) {
  const Scalar rate = omega + phi;
  return rate > Scalar(0) ? Scalar(0.5) / rate : std::numeric_limits<Scalar>::infinity();
}

/// Number of equal steps of size <= dt covering [0, t_end].
template <typename Scalar>
std::int64_t step_count(Scalar t_end, Scalar dt) {
  if (t_end == Scalar(0)) return 0;
  return static_cast<std::int64_t>(std::ceil(t_end / dt * (Scalar(1) - Scalar(1e-12))));
}

template <typename Scalar>
struct Rk4Result {
  std::complex<Scalar> u;
  std::complex<Scalar> v;
  std::int64_t steps;
  Scalar dt;  ///< step actually used, t_end / steps
};

/// Integrates (u, v)' = (v, -(2 pi k/L)^2 u - phi v) from 0 to t_end.
/// `bound_dt` overrides the per-mode stability bound (used when a whole state
/// is integrated with one step size).
template <typename Scalar>
Rk4Result<Scalar> rk4_mode(std::complex<Scalar> u0, std::complex<Scalar> v0, int k, Scalar phi,
                           Scalar length, Scalar t_end, Scalar dt, Scalar bound_dt = Scalar(-1)) {
  using C = std::complex<Scalar>;
  if (!(std::isfinite(t_end) && t_end >= Scalar(0))) throw PreconditionError("t_end must be >= 0");
  if (!(std::isfinite(dt) && dt > Scalar(0))) throw PreconditionError("dt must be positive");
  if (!(std::isfinite(phi) && phi >= Scalar(0))) throw PreconditionError("phi must be >= 0");
  if (!(std::isfinite(length) && length > Scalar(0))) throw PreconditionError("L must be > 0");

  const Scalar omega = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(k < 0 ? -k : k) / length;
  const Scalar limit = bound_dt > Scalar(0) ? bound_dt : stability_bound(omega, phi);
  if (dt > limit) throw PreconditionError("dt exceeds the RK4 stability bound");

  const Scalar stiffness = omega * omega;
  const std::int64_t n = step_count(t_end, dt);
  const Scalar h = n > 0 ? t_end / Scalar(n) : dt;
  const Scalar half = h / Scalar(2);

  auto accel = [&](C u, C v) { return -stiffness * u - phi * v; };

  C u = u0, v = v0;
  for (std::int64_t i = 0; i < n; ++i) {
    const C k1u = v, k1v = accel(u, v);
    const C u2 = u + half * k1u, v2 = v + half * k1v;
    const C k2u = v2, k2v = accel(u2, v2);
    const C u3 = u + half * k2u, v3 = v + half * k2v;
    const C k3u = v3, k3v = accel(u3, v3);
    const C u4 = u + h * k3u, v4 = v + h * k3v;
    const C k4u = v4, k4v = accel(u4, v4);
    u += h / Scalar(6) * (k1u + Scalar(2) * k2u + Scalar(2) * k3u + k4u);
    v += h / Scalar(6) * (k1v + Scalar(2) * k2v + Scalar(2) * k3v + k4v);
  }
  return {u, v, n, h};
}

}  // namespace fdwave::oracle
