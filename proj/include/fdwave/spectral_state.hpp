#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>

#include "fdwave/errors.hpp"

namespace fdwave {

template <typename Scalar>
using CoeffVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Relative tolerance on the Hermitian symmetry of real-field coefficients.
inline constexpr double kHermitianTolerance = 1e-12;

/// Storage slot of mode k in a coefficient vector ordered k = -K_max..K_max.
constexpr Eigen::Index mode_slot(int k, int k_max) { return static_cast<Eigen::Index>(k) + k_max; }

constexpr int k_max_from_size(Eigen::Index size) { return static_cast<int>((size - 1) / 2); }

/// Angular wavenumber 2*pi*|k|/L.
template <typename Scalar>
Scalar wavenumber(int k, Scalar length) {
  const Scalar k_abs = static_cast<Scalar>(k < 0 ? -k : k);
  return Scalar(2) * std::numbers::pi_v<Scalar> * k_abs / length;
}

namespace detail {

template <typename Scalar>
void require_length(Scalar length) {
  if (!(std::isfinite(length) && length > Scalar(0)))
    throw InvalidInput("domain length must be positive and finite");
}

template <typename Scalar>
void require_coefficients(const CoeffVector<Scalar>& c, int k_max, const char* name) {
  if (c.size() != 2 * static_cast<Eigen::Index>(k_max) + 1)
    throw DimensionMismatch(std::string(name) + ": expected 2*K_max+1 coefficients");
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (!std::isfinite(c[i].real()) || !std::isfinite(c[i].imag()))
      throw InvalidInput(std::string(name) + ": non-finite coefficient");
}

template <typename Scalar>
Scalar max_abs(const CoeffVector<Scalar>& c) {
  return c.size() == 0 ? Scalar(0) : c.cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Largest violation |c_{-k} - conj(c_k)| over all k, relative to max |c_k|.
template <typename Scalar>
Scalar hermitian_defect(const CoeffVector<Scalar>& c) {
  const int k_max = k_max_from_size(c.size());
  const Scalar scale = detail::max_abs(c);
  if (scale == Scalar(0)) return Scalar(0);
  Scalar worst = 0;
  for (int k = 0; k <= k_max; ++k) {
    const auto d = std::abs(c[mode_slot(-k, k_max)] - std::conj(c[mode_slot(k, k_max)]));
    worst = std::max(worst, d / scale);
  }
  return worst;
}

/// Truncated Fourier representation of a real displacement/velocity pair on (0, L).
///
/// Coefficients are stored for k = -K_max..K_max. The pair always describes
/// real fields: construction rejects coefficient vectors whose Hermitian
/// defect exceeds kHermitianTolerance, and set_mode writes both k and -k.
template <typename Scalar>
class BasicSpectralState {
public:
  using Complex = std::complex<Scalar>;
  using Coefficients = CoeffVector<Scalar>;

  /// Zero state.
  BasicSpectralState(Scalar length, int k_max) : length_(length), k_max_(k_max) {
    detail::require_length(length);
    if (k_max < 1) throw InvalidInput("K_max must be a positive integer");
    u_hat_ = Coefficients::Zero(size());
    v_hat_ = Coefficients::Zero(size());
  }

  BasicSpectralState(Scalar length, int k_max, Coefficients u_hat, Coefficients v_hat)
      : length_(length), k_max_(k_max), u_hat_(std::move(u_hat)), v_hat_(std::move(v_hat)) {
    detail::require_length(length);
    if (k_max < 1) throw InvalidInput("K_max must be a positive integer");
    detail::require_coefficients(u_hat_, k_max_, "u_hat");
    detail::require_coefficients(v_hat_, k_max_, "v_hat");
    if (hermitian_defect(u_hat_) > Scalar(kHermitianTolerance))
      throw RealityError("u_hat violates Hermitian symmetry");
    if (hermitian_defect(v_hat_) > Scalar(kHermitianTolerance))
      throw RealityError("v_hat violates Hermitian symmetry");
  }

  Scalar length() const { return length_; }
  int k_max() const { return k_max_; }
  Eigen::Index size() const { return 2 * static_cast<Eigen::Index>(k_max_) + 1; }

  const Coefficients& u_hat() const { return u_hat_; }
  const Coefficients& v_hat() const { return v_hat_; }

  Complex u(int k) const { return u_hat_[slot(k)]; }
  Complex v(int k) const { return v_hat_[slot(k)]; }

  /// Sets modes k and -k; the -k entries receive the conjugates. For k = 0
  /// the values must be real.
  void set_mode(int k, Complex u, Complex v) {
    if (k < 0) {
      k = -k;
      u = std::conj(u);
      v = std::conj(v);
    }
    if (k > k_max_) throw DimensionMismatch("mode index exceeds K_max");
    if (!std::isfinite(u.real()) || !std::isfinite(u.imag()) || !std::isfinite(v.real()) ||
        !std::isfinite(v.imag()))
      throw InvalidInput("non-finite mode coefficient");
    if (k == 0 && (u.imag() != Scalar(0) || v.imag() != Scalar(0)))
      throw RealityError("zero mode of a real field must be real");
    u_hat_[slot(k)] = u;
    v_hat_[slot(k)] = v;
    u_hat_[slot(-k)] = std::conj(u);
    v_hat_[slot(-k)] = std::conj(v);
  }

  /// Same state with the velocity coefficients replaced.
  BasicSpectralState with_velocity(Coefficients v_hat) const {
    return BasicSpectralState(length_, k_max_, u_hat_, std::move(v_hat));
  }

  bool same_shape(const BasicSpectralState& other) const {
    return k_max_ == other.k_max_ && length_ == other.length_;
  }

private:
  Eigen::Index slot(int k) const {
    if (k < -k_max_ || k > k_max_) throw DimensionMismatch("mode index exceeds K_max");
    return mode_slot(k, k_max_);
  }

  Scalar length_;
  int k_max_;
  Coefficients u_hat_;
  Coefficients v_hat_;
};

/// Damping multiplier sequence phi_k >= 0, symmetric in k and bounded.
template <typename Scalar>
class BasicFilterSpectrum {
public:
  using Values = RealVector<Scalar>;

  /// `values` holds phi_k for k = -K_max..K_max.
  explicit BasicFilterSpectrum(Values values) : values_(std::move(values)) {
    if (values_.size() < 3 || values_.size() % 2 == 0)
      throw DimensionMismatch("filter needs 2*K_max+1 values with K_max >= 1");
    k_max_ = k_max_from_size(values_.size());
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) throw InvalidInput("filter value is not finite");
      if (values_[i] < Scalar(0)) throw InvalidInput("filter values must be nonnegative");
    }
    for (int k = 1; k <= k_max_; ++k)
      if (values_[mode_slot(k, k_max_)] != values_[mode_slot(-k, k_max_)])
        throw InvalidInput("filter must be symmetric: phi_{-k} == phi_k");
  }

  /// Builds a symmetric filter from phi(|k|) for k = 0..K_max.
  template <typename Fn>
  static BasicFilterSpectrum from_function(int k_max, Fn&& phi) {
    if (k_max < 1) throw InvalidInput("K_max must be a positive integer");
    Values v(2 * static_cast<Eigen::Index>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
      const Scalar value = static_cast<Scalar>(phi(k));
      v[mode_slot(k, k_max)] = value;
      v[mode_slot(-k, k_max)] = value;
    }
    return BasicFilterSpectrum(std::move(v));
  }

  static BasicFilterSpectrum zero(int k_max) {
    return from_function(k_max, [](int) { return Scalar(0); });
  }
  static BasicFilterSpectrum constant(int k_max, Scalar value) {
    return from_function(k_max, [value](int) { return value; });
  }
  /// phi_k = 1 for |k| >= k0, 0 otherwise: damping on the high frequencies.
  static BasicFilterSpectrum indicator(int k_max, int k0) {
    return from_function(k_max, [k0](int k) { return k >= k0 ? Scalar(1) : Scalar(0); });
  }

  int k_max() const { return k_max_; }
  const Values& values() const { return values_; }
  Scalar operator()(int k) const {
    if (k < -k_max_ || k > k_max_) throw DimensionMismatch("mode index exceeds filter K_max");
    return values_[mode_slot(k, k_max_)];
  }
  Scalar sup() const { return values_.maxCoeff(); }

  /// True iff every phi_k is exactly 0 or 1.
  bool is_idempotent() const {
    for (Eigen::Index i = 0; i < values_.size(); ++i)
      if (values_[i] != Scalar(0) && values_[i] != Scalar(1)) return false;
    return true;
  }

private:
  Values values_;
  int k_max_ = 0;
};

/// Uniform samples u(x_j), x_j = j*L/N, of a real field on (0, L).
template <typename Scalar>
class BasicGridField {
public:
  BasicGridField(Scalar length, RealVector<Scalar> samples)
      : length_(length), samples_(std::move(samples)) {
    detail::require_length(length);
    if (samples_.size() < 1) throw InvalidInput("grid field needs at least one sample");
  }

  Scalar length() const { return length_; }
  Eigen::Index size() const { return samples_.size(); }
  const RealVector<Scalar>& samples() const { return samples_; }
  Scalar x(Eigen::Index j) const { return static_cast<Scalar>(j) * length_ / static_cast<Scalar>(size()); }

private:
  Scalar length_;
  RealVector<Scalar> samples_;
};

using SpectralState = BasicSpectralState<double>;
using FilterSpectrum = BasicFilterSpectrum<double>;
using GridField = BasicGridField<double>;

template <typename Scalar>
void require_compatible(const BasicSpectralState<Scalar>& state,
                        const BasicFilterSpectrum<Scalar>& filter) {
  if (state.k_max() != filter.k_max())
    throw DimensionMismatch("state and filter have different K_max");
}

}  // namespace fdwave
