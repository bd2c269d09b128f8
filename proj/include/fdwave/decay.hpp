#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <type_traits>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "fdwave/errors.hpp"

namespace fdwave {

template <typename Scalar>
struct DecaySample {
  Scalar t;
  Scalar value;
};

/// log(value) ~ log_prefactor - gamma_hat * t over [t_lo, t_hi].
template <typename Scalar>
struct DecayFit {
  Scalar gamma_hat;
  Scalar log_prefactor;
  Scalar rms_residual;
  Scalar t_lo;
  Scalar t_hi;
  std::size_t samples_used;
};

/// Ordinary least squares of log(value) against t on the samples inside the
/// window. Without a window, [T/2, T] with T the last sample time is used.
template <typename Scalar>
DecayFit<Scalar> fit_decay(std::span<const DecaySample<Scalar>> samples,
                           std::type_identity_t<std::optional<std::pair<Scalar, Scalar>>> window = std::nullopt) {
  if (samples.empty()) throw PreconditionError("no samples to fit");
  Scalar t_lo, t_hi;
  if (window) {
    std::tie(t_lo, t_hi) = *window;
  } else {
    Scalar t_end = samples.front().t;
    for (const auto& s : samples) t_end = std::max(t_end, s.t);
    t_lo = t_end / Scalar(2);
    t_hi = t_end;
  }
  if (!(t_lo < t_hi)) throw PreconditionError("degenerate fit window");

  std::vector<Scalar> ts, ys;
  for (const auto& s : samples) {
    if (s.t < t_lo || s.t > t_hi) continue;
    if (!(s.value > Scalar(0)) || !std::isfinite(s.value))
      throw PreconditionError("decay fit needs strictly positive finite values in the window");
    ts.push_back(s.t);
    ys.push_back(std::log(s.value));
  }
  if (ts.size() < 5) throw PreconditionError("decay fit needs at least 5 samples in the window");

  // Centre t so the two columns are well conditioned.
  const auto n = static_cast<Eigen::Index>(ts.size());
  const Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> t(ts.data(), n);
  const Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> y(ys.data(), n);
  const Scalar t_mean = t.mean();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> design(n, 2);
  design.col(0).setOnes();
  design.col(1) = t.array() - t_mean;
  const Eigen::Matrix<Scalar, 2, 1> beta = design.colPivHouseholderQr().solve(y);
  const Scalar rms = std::sqrt((design * beta - y).squaredNorm() / Scalar(n));

  return {-beta[1], beta[0] - beta[1] * t_mean, rms, t_lo, t_hi, ts.size()};
}

template <typename Scalar>
DecayFit<Scalar> fit_decay(const std::vector<DecaySample<Scalar>>& samples,
                           std::type_identity_t<std::optional<std::pair<Scalar, Scalar>>> window = std::nullopt) {
  return fit_decay(std::span<const DecaySample<Scalar>>(samples), window);
}

}  // namespace fdwave
