#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fdwave/norms.hpp"
#include "fdwave/propagator.hpp"
#include "fdwave/rk4_oracle.hpp"
#include "fdwave/spectral_state.hpp"

// Explicit initial data on (0, 1) defeating any claimed uniform bound
//   ||u(t)||_{H^1}^2 <= M e^{-gamma t} (||u0||_{H^1}^2 + ||v0||_{L^2}^2)
// when the damping symbol has a vanishing tail. All data live on a single
// mode pair +-k0 with phi_{k0} < gamma/2, and v0 = -P[u0]/2 kills the sine
// part of the closed form, leaving u_k(t) = e^{-t phi/2} cos(t w/2) u_k(0).

namespace fdwave {

template <typename Scalar>
struct MarginSample {
  long n;
  Scalar t;
  Scalar lhs;  ///< ||u(t_n)||_{H^1}^2
  Scalar rhs;  ///< M e^{-gamma t_n} (||u0||_{H^1}^2 + ||v0||_{L^2}^2)
  Scalar margin;
  Scalar lhs_unsquared;  ///< ||u(t_n)||_{H^1}
  Scalar rhs_unsquared;  ///< M e^{-gamma t_n} (||u0||_{H^1} + ||v0||_{L^2})
};

template <typename Scalar>
struct CounterexampleCertificate {
  int k0;
  Scalar gamma;
  Scalar m;
  BasicFilterSpectrum<Scalar> filter;
  BasicSpectralState<Scalar> initial;
  Scalar frequency;  ///< sqrt((4 pi k0)^2 - phi_{k0}^2)
  long n0;
  std::vector<MarginSample<Scalar>> margins;

  Scalar phi_k0() const { return filter(k0); }
  std::vector<Scalar> times() const {
    std::vector<Scalar> t;
    for (const auto& s : margins) t.push_back(s.t);
    return t;
  }
};

namespace detail {

inline constexpr double counterexample_length = 1.0;

template <typename Scalar>
void require_vanishing_tail_filter(const BasicFilterSpectrum<Scalar>& filter) {
  const Scalar four_pi = Scalar(4) * std::numbers::pi_v<Scalar>;
  for (int k = 0; k <= filter.k_max(); ++k) {
    const Scalar phi = filter(k);
    if (!(phi > Scalar(0)))
      throw PreconditionError("counterexample needs phi_k > 0 for every k (phi_" +
                              std::to_string(k) + " = 0)");
    if (k != 0 && !(phi * phi < (four_pi * Scalar(k)) * (four_pi * Scalar(k))))
      throw PreconditionError("counterexample needs every mode k != 0 underdamped");
  }
}

template <typename Scalar>
MarginSample<Scalar> evaluate_margin(const BasicSpectralState<Scalar>& u0state,
                                     const BasicFilterSpectrum<Scalar>& filter, Scalar gamma,
                                     Scalar m, long n, Scalar t) {
  const auto st = propagate_state(u0state, filter, t);
  const Scalar h1_0 = h1_norm_sq(u0state), l2_0 = l2_norm_sq(u0state.v_hat());
  const Scalar lhs = h1_norm_sq(st);
  const Scalar decay = m * std::exp(-gamma * t);
  const Scalar rhs = decay * (h1_0 + l2_0);
  return {n, t, lhs, rhs, lhs - rhs, std::sqrt(lhs), decay * (std::sqrt(h1_0) + std::sqrt(l2_0))};
}

}  // namespace detail

/// Smallest admissible k0 in 1..K_max with phi_{k0} < gamma/2 and
/// 2 (1 + (2 pi k0)^2) > gamma^2 / 2, or -1 when none exists.
template <typename Scalar>
int admissible_k0(const BasicFilterSpectrum<Scalar>& filter, Scalar gamma) {
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  for (int k = 1; k <= filter.k_max(); ++k) {
    const Scalar w = two_pi * Scalar(k);
    if (filter(k) < gamma / Scalar(2) && Scalar(2) * (Scalar(1) + w * w) > gamma * gamma / Scalar(2))
      return k;
  }
  return -1;
}

/// Builds the certificate with margins at n = n0 .. n0 + count - 1.
template <typename Scalar>
CounterexampleCertificate<Scalar> build_counterexample(Scalar gamma, Scalar m,
                                                       const BasicFilterSpectrum<Scalar>& filter,
                                                       int count = 11) {
  if (!(std::isfinite(gamma) && gamma > Scalar(0))) throw PreconditionError("gamma must be > 0");
  if (!(std::isfinite(m) && m > Scalar(0))) throw PreconditionError("M must be > 0");
  if (count < 1) throw PreconditionError("need at least one margin time");
  detail::require_vanishing_tail_filter(filter);
  const int k0 = admissible_k0(filter, gamma);
  if (k0 < 0)
    throw PreconditionError("no admissible k0 with phi_k0 < gamma/2 within K_max = " +
                            std::to_string(filter.k_max()) + "; raise K_max");

  const Scalar length = Scalar(detail::counterexample_length);
  const int k_max = filter.k_max();
  // u0 = 2 sin(2 pi k0 x): u_{k0} = -i, u_{-k0} = +i; v0 = -P[u0]/2.
  CoeffVector<Scalar> u = CoeffVector<Scalar>::Zero(2 * k_max + 1);
  u[mode_slot(k0, k_max)] = std::complex<Scalar>(0, -1);
  u[mode_slot(-k0, k_max)] = std::complex<Scalar>(0, 1);
  CoeffVector<Scalar> v(u.size());
  for (int k = -k_max; k <= k_max; ++k)
    v[mode_slot(k, k_max)] = -(filter(k) / Scalar(2)) * u[mode_slot(k, k_max)];
  BasicSpectralState<Scalar> initial(length, k_max, std::move(u), std::move(v));

  const Scalar phi = filter(k0);
  const Scalar four_pi_k0 = Scalar(4) * std::numbers::pi_v<Scalar> * Scalar(k0);
  const Scalar freq = std::sqrt(four_pi_k0 * four_pi_k0 - phi * phi);
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  auto t_of = [&](long n) { return two_pi * Scalar(n) / freq; };
  auto exploding = [&](long n) { return std::exp(gamma * t_of(n) / Scalar(2)) / Scalar(4) > m; };

  // Estimate n0 from the threshold, then settle on the minimal n >= 1.
  long n0 = std::max<long>(
      1, static_cast<long>(std::floor(Scalar(2) * std::log(Scalar(4) * m) / gamma * freq / two_pi)));
  while (!exploding(n0)) ++n0;
  while (n0 > 1 && exploding(n0 - 1)) --n0;

  CounterexampleCertificate<Scalar> cert{k0, gamma, m, filter, initial, freq, n0, {}};
  for (long n = n0; n < n0 + count; ++n)
    cert.margins.push_back(detail::evaluate_margin(initial, filter, gamma, m, n, t_of(n)));
  return cert;
}

template <typename Scalar>
struct NoDecayReport {
  bool holds = false;
  Scalar min_margin = 0;
  Scalar min_margin_unsquared = 0;
  Scalar max_stored_discrepancy = 0;  ///< |recomputed lhs - certificate lhs| / lhs
  Scalar envelope_error = 0;          ///< single-mode identity, relative
  Scalar rk4_relative_error = 0;      ///< lhs at n0 from the RK4 oracle vs closed form
  Scalar rk4_margin = 0;
  bool conditions_hold = false;
};

/// Re-checks every margin of the certificate mode by mode, compares against the
/// single-mode envelope 2(1 + (2 pi k0)^2) e^{-t phi} cos^2(t w / 2), and repeats
/// the n0 check with the RK4 oracle.
template <typename Scalar>
NoDecayReport<Scalar> verify_no_uniform_decay(const CounterexampleCertificate<Scalar>& cert,
                                              Scalar rk4_dt = Scalar(1e-4)) {
  NoDecayReport<Scalar> rep;
  const auto& f = cert.filter;
  const auto& s0 = cert.initial;
  const Scalar length = s0.length();
  const Scalar phi = f(cert.k0);
  const Scalar two_pi_k0 = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(cert.k0);
  const Scalar norm0 = h1_norm_sq(s0) + l2_norm_sq(s0.v_hat());
  const Scalar h1_0 = h1_norm_sq(s0), l2_0 = l2_norm_sq(s0.v_hat());

  rep.conditions_hold = phi < cert.gamma / Scalar(2) &&
                        Scalar(2) * (Scalar(1) + two_pi_k0 * two_pi_k0) > cert.gamma * cert.gamma / Scalar(2);
  if (cert.margins.empty()) return rep;

  bool all_positive = rep.conditions_hold;
  rep.min_margin = cert.margins.front().margin;
  rep.min_margin_unsquared = cert.margins.front().lhs_unsquared - cert.margins.front().rhs_unsquared;
  for (const auto& ms : cert.margins) {
    Scalar lhs = 0;
    for (int k = -s0.k_max(); k <= s0.k_max(); ++k) {
      const auto mv = propagate_mode(s0.u(k), s0.v(k), k, f(k), length, ms.t);
      const Scalar w = wavenumber(k, length);
      lhs += (Scalar(1) + w * w) * std::norm(mv.u);
    }
    const Scalar decay = cert.m * std::exp(-cert.gamma * ms.t);
    const Scalar margin = lhs - decay * norm0;
    const Scalar margin_unsq = std::sqrt(lhs) - decay * (std::sqrt(h1_0) + std::sqrt(l2_0));
    const Scalar c = std::cos(ms.t / Scalar(2) * cert.frequency);
    const Scalar envelope = Scalar(2) * (Scalar(1) + two_pi_k0 * two_pi_k0) * std::exp(-ms.t * phi) * c * c;
    rep.envelope_error = std::max(rep.envelope_error, std::abs(lhs - envelope) / envelope);
    rep.max_stored_discrepancy = std::max(rep.max_stored_discrepancy, std::abs(lhs - ms.lhs) / lhs);
    rep.min_margin = std::min(rep.min_margin, margin);
    rep.min_margin_unsquared = std::min(rep.min_margin_unsquared, margin_unsq);
    all_positive = all_positive && margin > Scalar(0);
  }

  // RK4 spot check at n0; modes other than +-k0 are identically zero.
  const auto& first = cert.margins.front();
  const auto r = oracle::rk4_mode(s0.u(cert.k0), s0.v(cert.k0), cert.k0, phi, length, first.t, rk4_dt);
  const Scalar lhs_rk4 = Scalar(2) * (Scalar(1) + two_pi_k0 * two_pi_k0) * std::norm(r.u);
  rep.rk4_relative_error = std::abs(lhs_rk4 - first.lhs) / first.lhs;
  rep.rk4_margin = lhs_rk4 - first.rhs;
  rep.holds = all_positive && rep.rk4_margin > Scalar(0);
  return rep;
}

}  // namespace fdwave
