#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "fdwave/decay.hpp"
#include "fdwave/norms.hpp"
#include "fdwave/propagator.hpp"
#include "fdwave/spectral_state.hpp"

// Orthogonal splitting for indicator filters. A diagonal filter commutes with
// the Laplacian and, when phi_k is 0 or 1, it is an orthogonal projection, so
// no further runtime check is needed beyond idempotence.

namespace fdwave {

enum class Part { P, Q };

/// A filter with phi_k in {0, 1}; P keeps the support, Q = Id - P the rest.
template <typename Scalar>
class BasicProjectionFilter {
public:
  explicit BasicProjectionFilter(BasicFilterSpectrum<Scalar> filter) : filter_(std::move(filter)) {
    if (!filter_.is_idempotent())
      throw PreconditionError("splitting unavailable: filter is not an orthogonal projection");
  }

  const BasicFilterSpectrum<Scalar>& filter() const { return filter_; }
  int k_max() const { return filter_.k_max(); }
  bool in_support(int k) const { return filter_(k) == Scalar(1); }
  bool empty() const { return filter_.sup() == Scalar(0); }

private:
  BasicFilterSpectrum<Scalar> filter_;
};

using ProjectionFilter = BasicProjectionFilter<double>;

template <typename Scalar>
BasicSpectralState<Scalar> project(const BasicSpectralState<Scalar>& s,
                                   const BasicProjectionFilter<Scalar>& pf, Part which) {
  require_compatible(s, pf.filter());
  CoeffVector<Scalar> u = s.u_hat(), v = s.v_hat();
  for (int k = -s.k_max(); k <= s.k_max(); ++k) {
    const bool keep = pf.in_support(k) == (which == Part::P);
    if (!keep) {
      u[mode_slot(k, s.k_max())] = 0;
      v[mode_slot(k, s.k_max())] = 0;
    }
  }
  return BasicSpectralState<Scalar>(s.length(), s.k_max(), std::move(u), std::move(v));
}

struct SplitModeError {
  int k;
  double q_err;
  double p_err;
};

struct SplitReport {
  double q_max_err = 0;
  double p_max_err = 0;
  double tolerance = 0;
  std::vector<SplitModeError> per_mode;
  bool passed() const { return q_max_err <= tolerance && p_max_err <= tolerance; }
};

/// Compares the Q- and P-parts of the trajectory damped by `pf` against the
/// undamped evolution of Q[state0] and the fully damped (phi = 1) evolution
/// of P[state0]. Errors are max |difference| per mode over all times.
template <typename Scalar>
SplitReport verify_split(const BasicSpectralState<Scalar>& state0,
                         const BasicProjectionFilter<Scalar>& pf, const std::vector<Scalar>& times,
                         double tolerance = 1e-10) {
  require_compatible(state0, pf.filter());
  const int k_max = state0.k_max();
  const auto undamped = BasicFilterSpectrum<Scalar>::zero(k_max);
  const auto damped = BasicFilterSpectrum<Scalar>::constant(k_max, Scalar(1));
  const auto q0 = project(state0, pf, Part::Q);
  const auto p0 = project(state0, pf, Part::P);

  SplitReport report;
  report.tolerance = tolerance;
  for (int k = -k_max; k <= k_max; ++k) report.per_mode.push_back({k, 0.0, 0.0});

  for (Scalar t : times) {
    const auto full = propagate_state(state0, pf.filter(), t);
    const auto q_part = project(full, pf, Part::Q);
    const auto p_part = project(full, pf, Part::P);
    const auto q_ref = propagate_state(q0, undamped, t);
    const auto p_ref = propagate_state(p0, damped, t);
    for (int k = -k_max; k <= k_max; ++k) {
      auto& e = report.per_mode[static_cast<std::size_t>(k + k_max)];
      const double dq = static_cast<double>(
          std::max(std::abs(q_part.u(k) - q_ref.u(k)), std::abs(q_part.v(k) - q_ref.v(k))));
      const double dp = static_cast<double>(
          std::max(std::abs(p_part.u(k) - p_ref.u(k)), std::abs(p_part.v(k) - p_ref.v(k))));
      e.q_err = std::max(e.q_err, dq);
      e.p_err = std::max(e.p_err, dp);
    }
  }
  for (const auto& e : report.per_mode) {
    report.q_max_err = std::max(report.q_max_err, e.q_err);
    report.p_max_err = std::max(report.p_max_err, e.p_err);
  }
  return report;
}

template <typename Scalar>
struct ProjectedDecay {
  Scalar m_hat;      ///< smallest M with value(t) <= M e^{-gamma_hat t} on every sample
  Scalar gamma_hat;
  DecayFit<Scalar> fit;
  std::vector<DecaySample<Scalar>> series;  ///< ||P u||_{H^1}^2 + ||P v||_{L^2}^2
};

/// Fits an exponential envelope to ||P u(t)||_{H^1}^2 + ||P v(t)||_{L^2}^2
/// along the trajectory damped by `damping`, with P the projection `pf`.
template <typename Scalar>
ProjectedDecay<Scalar> projected_decay_bound(
    const BasicSpectralState<Scalar>& state0, const BasicFilterSpectrum<Scalar>& damping,
    const BasicProjectionFilter<Scalar>& pf, const std::vector<Scalar>& times,
    std::type_identity_t<std::optional<std::pair<Scalar, Scalar>>> window = std::nullopt) {
  if (pf.empty()) throw PreconditionError("projected part is identically zero: decay fit undefined");
  ProjectedDecay<Scalar> out{};
  for (Scalar t : times) {
    const auto p = project(propagate_state(state0, damping, t), pf, Part::P);
    out.series.push_back({t, energy_norm_sq(p)});
  }
  bool all_zero = true;
  for (const auto& s : out.series) all_zero = all_zero && s.value == Scalar(0);
  if (all_zero) throw PreconditionError("projected part is identically zero: decay fit undefined");

  out.fit = fit_decay(out.series, window);
  out.gamma_hat = out.fit.gamma_hat;
  out.m_hat = 0;
  for (const auto& s : out.series)
    out.m_hat = std::max(out.m_hat, s.value * std::exp(out.gamma_hat * s.t));
  return out;
}

/// Same, with the projection itself as the damping filter.
template <typename Scalar>
ProjectedDecay<Scalar> projected_decay_bound(
    const BasicSpectralState<Scalar>& state0, const BasicProjectionFilter<Scalar>& pf,
    const std::vector<Scalar>& times, std::type_identity_t<std::optional<std::pair<Scalar, Scalar>>> window = std::nullopt) {
  return projected_decay_bound(state0, pf.filter(), pf, times, window);
}

}  // namespace fdwave
