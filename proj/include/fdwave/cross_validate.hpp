#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "fdwave/propagator.hpp"
#include "fdwave/rk4_oracle.hpp"
#include "fdwave/spectral_state.hpp"

namespace fdwave {

struct OracleReport {
  double max_discrepancy = 0;  ///< max |analytic - RK4| over modes and both components
  int worst_mode = 0;
  std::int64_t steps = 0;
  double dt = 0;
  double t_end = 0;
};

/// Step bound for integrating a whole state with one dt.
template <typename Scalar>
Scalar state_stability_bound(const BasicSpectralState<Scalar>& state,
                             const BasicFilterSpectrum<Scalar>& filter) {
  const Scalar top = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(state.k_max()) / state.length();
  return Scalar(0.5) / (top + filter.sup());
}

template <typename Scalar>
OracleReport cross_validate(const BasicSpectralState<Scalar>& state,
                            const BasicFilterSpectrum<Scalar>& filter, Scalar t_end, Scalar dt) {
  require_compatible(state, filter);
  const Scalar bound = state_stability_bound(state, filter);
  if (dt > bound) throw PreconditionError("dt exceeds the RK4 stability bound for this state");

  OracleReport report;
  report.t_end = static_cast<double>(t_end);
  const auto exact = propagate_state(state, filter, t_end);
  for (int k = -state.k_max(); k <= state.k_max(); ++k) {
    const auto r = oracle::rk4_mode(state.u(k), state.v(k), k, filter(k), state.length(), t_end,
                                    dt, bound);
    const Scalar err = std::max(std::abs(r.u - exact.u(k)), std::abs(r.v - exact.v(k)));
    if (static_cast<double>(err) > report.max_discrepancy || k == -state.k_max()) {
      report.max_discrepancy = static_cast<double>(err);
      report.worst_mode = k;
    }
    report.steps = r.steps;
    report.dt = static_cast<double>(r.dt);
  }
  return report;
}

}  // namespace fdwave
