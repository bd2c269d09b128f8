#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fdwave/propagator.hpp"
#include "fdwave/spectral_state.hpp"

namespace fdwave {

template <typename Scalar>
struct Energy {
  Scalar kinetic;
  Scalar potential;
  Scalar total;
};

/// kinetic = 1/2 sum |v_k|^2, potential = 1/2 sum (2 pi k/L)^2 |u_k|^2.
template <typename Scalar>
Energy<Scalar> energy(const BasicSpectralState<Scalar>& s) {
  const int k_max = s.k_max();
  Scalar kinetic = 0, potential = 0;
  for (int k = -k_max; k <= k_max; ++k) {
    const Scalar w = wavenumber(k, s.length());
    kinetic += std::norm(s.v(k));
    potential += w * w * std::norm(s.u(k));
  }
  kinetic /= Scalar(2);
  potential /= Scalar(2);
  return {kinetic, potential, kinetic + potential};
}

/// <P v, v> = sum phi_k |v_k|^2, nonnegative for any admissible filter.
template <typename Scalar>
Scalar dissipation_rate(const BasicSpectralState<Scalar>& s, const BasicFilterSpectrum<Scalar>& f) {
  require_compatible(s, f);
  Scalar sum = 0;
  for (int k = -s.k_max(); k <= s.k_max(); ++k) sum += f(k) * std::norm(s.v(k));
  return sum;
}

/// E + lambda * sum Re(u_k conj(v_k)), for lambda in (0, 1/2).
template <typename Scalar>
Scalar perturbed_energy(const BasicSpectralState<Scalar>& s, Scalar lambda) {
  if (!(lambda > Scalar(0) && lambda < Scalar(0.5)))
    throw PreconditionError("perturbation parameter must lie in (0, 1/2)");
  Scalar cross = 0;
  for (int k = -s.k_max(); k <= s.k_max(); ++k) cross += std::real(s.u(k) * std::conj(s.v(k)));
  return energy(s).total + lambda * cross;
}

template <typename Scalar>
struct EnergyRecord {
  Scalar t;
  Scalar kinetic;
  Scalar potential;
  Scalar total;
  Scalar dissipated;  ///< int_0^t <P v, v> ds
  Scalar residual;    ///< total + dissipated - total(0)
};

namespace detail {

/// Adaptive Simpson with a hard depth limit; refinement stops when the
/// two-halves estimate differs from the coarse one by at most `tol`.
template <typename Scalar, typename Fn>
class AdaptiveSimpson {
public:
  AdaptiveSimpson(Fn f, int max_depth) : f_(std::move(f)), max_depth_(max_depth) {}

  Scalar integrate(Scalar a, Scalar b, Scalar tol) {
    const Scalar fa = f_(a), fb = f_(b), fm = f_((a + b) / Scalar(2));
    return refine(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 0);
  }

private:
  static Scalar simpson(Scalar a, Scalar b, Scalar fa, Scalar fm, Scalar fb) {
    return (b - a) / Scalar(6) * (fa + Scalar(4) * fm + fb);
  }

  Scalar refine(Scalar a, Scalar b, Scalar fa, Scalar fm, Scalar fb, Scalar whole, Scalar tol,
                int depth) {
    const Scalar m = (a + b) / Scalar(2);
    const Scalar flm = f_((a + m) / Scalar(2)), frm = f_((m + b) / Scalar(2));
    const Scalar left = simpson(a, m, fa, flm, fm);
    const Scalar right = simpson(m, b, fm, frm, fb);
    const Scalar delta = left + right - whole;
    if (std::abs(delta) <= tol) return left + right + delta / Scalar(15);
    if (depth >= max_depth_)
      throw ConvergenceError("dissipation quadrature did not converge within 20 refinement levels");
    return refine(a, m, fa, flm, fm, left, tol / Scalar(2), depth + 1) +
           refine(m, b, fm, frm, fb, right, tol / Scalar(2), depth + 1);
  }

  Fn f_;
  int max_depth_;
};

}  // namespace detail

/// Energy balance along the exact trajectory from `state0`, sampled at the
/// increasing times `times`. Each interval between consecutive outputs is
/// integrated to within 1e-11 * E(0).
template <typename Scalar>
std::vector<EnergyRecord<Scalar>> trajectory_ledger(const BasicSpectralState<Scalar>& state0,
                                                    const BasicFilterSpectrum<Scalar>& filter,
                                                    const std::vector<Scalar>& times) {
  require_compatible(state0, filter);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(std::isfinite(times[i]) && times[i] >= Scalar(0)))
      throw PreconditionError("ledger times must be finite and nonnegative");
    if (i > 0 && times[i] < times[i - 1]) throw PreconditionError("ledger times must be sorted");
  }

  const auto e0 = energy(state0).total;
  const int k_max = state0.k_max();
  const Scalar length = state0.length();

  auto rate = [&](Scalar s) {
    Scalar sum = 0;
    for (int k = -k_max; k <= k_max; ++k) {
      const Scalar phi = filter(k);
      if (phi == Scalar(0)) continue;
      const auto m = transfer_matrix(k, phi, length, s);
      sum += phi * std::norm(m(1, 0) * state0.u(k) + m(1, 1) * state0.v(k));
    }
    return sum;
  };
  detail::AdaptiveSimpson<Scalar, decltype(rate)> quad(rate, 20);

  // Panels no wider than a quarter period of the fastest oscillation of the
  // integrand, so that the first Simpson estimate cannot alias.
  Scalar fastest = 0;
  for (int k = 0; k <= k_max; ++k)
    if (filter(k) > Scalar(0)) fastest = std::max(fastest, wavenumber(k, length));
  const Scalar panel = fastest > Scalar(0) ? std::numbers::pi_v<Scalar> / (Scalar(4) * fastest)
                                           : Scalar(1);
  const Scalar tol = Scalar(1e-11) * e0;

  std::vector<EnergyRecord<Scalar>> out;
  out.reserve(times.size());
  Scalar dissipated = 0, t_prev = 0;
  for (Scalar t : times) {
    const Scalar span = t - t_prev;
    if (span > Scalar(0) && filter.sup() > Scalar(0) && e0 > Scalar(0)) {
      const auto n = static_cast<long>(std::ceil(span / panel));
      for (long p = 0; p < n; ++p) {
        const Scalar a = t_prev + span * Scalar(p) / Scalar(n);
        const Scalar b = p + 1 == n ? t : t_prev + span * Scalar(p + 1) / Scalar(n);
        dissipated += quad.integrate(a, b, tol / Scalar(n));
      }
    }
    const auto e = energy(propagate_state(state0, filter, t));
    out.push_back({t, e.kinetic, e.potential, e.total, dissipated, e.total + dissipated - e0});
    t_prev = t;
  }
  return out;
}

/// (-d_xx + P + I) applied to coefficients: (omega_k^2 + phi_k + 1) c_k.
template <typename Scalar>
CoeffVector<Scalar> forward_operator(const BasicFilterSpectrum<Scalar>& filter,
                                     const CoeffVector<Scalar>& u, Scalar length) {
  if (u.size() != filter.values().size()) throw DimensionMismatch("filter and coefficients differ");
  const int k_max = filter.k_max();
  CoeffVector<Scalar> out(u.size());
  for (int k = -k_max; k <= k_max; ++k) {
    const Scalar w = wavenumber(k, length);
    out[mode_slot(k, k_max)] = (w * w + filter(k) + Scalar(1)) * u[mode_slot(k, k_max)];
  }
  return out;
}

/// Solves (-d_xx + P + I) u = h. The symbol is >= 1, so the solve never
/// divides by anything small.
template <typename Scalar>
CoeffVector<Scalar> resolvent_solve(const BasicFilterSpectrum<Scalar>& filter,
                                    const CoeffVector<Scalar>& h, Scalar length) {
  detail::require_length(length);
  if (h.size() != filter.values().size()) throw DimensionMismatch("filter and right-hand side differ");
  detail::require_coefficients(h, filter.k_max(), "rhs");
  const int k_max = filter.k_max();
  CoeffVector<Scalar> u(h.size());
  for (int k = -k_max; k <= k_max; ++k) {
    const Scalar w = wavenumber(k, length);
    u[mode_slot(k, k_max)] = h[mode_slot(k, k_max)] / (w * w + filter(k) + Scalar(1));
  }
  return u;
}

}  // namespace fdwave
