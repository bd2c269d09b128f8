#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "fdwave/decay.hpp"
#include "fdwave/energy.hpp"
#include "test_support.hpp"

using namespace fdwave;
using namespace fdwave::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double pi = std::numbers::pi;

std::vector<double> grid(double t0, double t1, int n) {
  std::vector<double> t;
  for (int i = 0; i <= n; ++i) t.push_back(t0 + (t1 - t0) * i / n);
  return t;
}
}  // namespace

TEST_CASE("energy examples", "[energy]") {
  CHECK(energy(SpectralState(1.0, 3)).total == 0.0);
  SpectralState s(1.0, 3);
  s.set_mode(1, 1.0, 0.0);
  const auto e = energy(s);
  CHECK(e.kinetic == 0.0);
  CHECK_THAT(e.potential, WithinRel(4 * pi * pi, 1e-15));
}

TEST_CASE("energy and dissipation match long-double sums", "[energy][oracle]") {
  std::mt19937_64 rng(31);
  const auto s = random_hermitian_state(rng, 2.0, 40);
  const auto f = mixed_filter(40);
  const auto kin = weighted_sum_ld(s.v_hat(), [](int) { return 0.5L; });
  const auto pot = weighted_sum_ld(s.u_hat(), [](int k) {
    const long double w = 2 * kPiL * k / 2.0L;
    return 0.5L * w * w;
  });
  const auto dis = weighted_sum_ld(s.v_hat(), [&](int k) { return static_cast<long double>(f(k)); });
  const auto e = energy(s);
  CHECK_THAT(e.kinetic, WithinRel(static_cast<double>(kin), 1e-13));
  CHECK_THAT(e.potential, WithinRel(static_cast<double>(pot), 1e-13));
  CHECK_THAT(dissipation_rate(s, f), WithinRel(static_cast<double>(dis), 1e-13));
}

TEST_CASE("dissipation rate examples and sign", "[energy][property]") {
  std::mt19937_64 rng(32);
  const auto s = random_hermitian_state(rng, 1.0, 12);
  CHECK(dissipation_rate(s, FilterSpectrum::zero(12)) == 0.0);

  const auto ind = FilterSpectrum::indicator(12, 3);
  double restricted = 0;
  for (int k = -12; k <= 12; ++k)
    if (std::abs(k) >= 3) restricted += 0.5 * std::norm(s.v(k));
  CHECK_THAT(dissipation_rate(s, ind), WithinRel(2 * restricted, 1e-14));

  for (int trial = 0; trial < 50; ++trial) {
    const auto r = random_hermitian_state(rng, 1.0, 12);
    CHECK(dissipation_rate(r, mixed_filter(12)) >= 0.0);
  }
}

TEST_CASE("ledger without damping has zero dissipation and residual", "[energy]") {
  std::mt19937_64 rng(33);
  const auto s = random_hermitian_state(rng, 1.0, 10);
  const auto ledger = trajectory_ledger(s, FilterSpectrum::zero(10), grid(0, 5, 10));
  const double e0 = energy(s).total;
  for (const auto& r : ledger) {
    CHECK(r.dissipated == 0.0);
    CHECK(std::fabs(r.residual) <= 1e-10 * e0);
  }
}

TEST_CASE("ledger closes on the indicator-damped random state", "[energy]") {
  std::mt19937_64 rng(20);
  const auto s = random_hermitian_state(rng, 1.0, 20, false);
  const auto ledger = trajectory_ledger(s, FilterSpectrum::indicator(20, 3), grid(0, 10, 100));
  const double e0 = energy(s).total;
  double prev = 0;
  for (const auto& r : ledger) {
    CHECK(std::fabs(r.residual) <= 1e-8 * e0);
    CHECK(r.dissipated >= prev);
    prev = r.dissipated;
  }
}

TEST_CASE("dissipated energy matches the closed-form integral on the critical mode", "[energy][oracle]") {
  // v_1(t) = (1 - 2 pi t) e^{-2 pi t} on both +-1 modes, phi = 4 pi:
  // int_0^T 2 * 4 pi (1 - a s)^2 e^{-2 a s} ds with a = 2 pi.
  SpectralState s(1.0, 2);
  s.set_mode(1, 0.0, 1.0);
  const auto f = FilterSpectrum::from_function(2, [](int k) { return k == 1 ? 4 * pi : 0.0; });
  const auto ledger = trajectory_ledger(s, f, {0.0, 0.5, 2.0, 20.0});
  const long double a = 2 * kPiL;
  auto closed = [&](long double t) {
    // antiderivative of (1 - a s)^2 e^{-2 a s}
    auto prim = [&](long double x) {
      const long double y = 1 - a * x;
      return -std::exp(-2 * a * x) * (y * y - y + 0.5L) / (2 * a);
    };
    return 8 * kPiL * (prim(t) - prim(0));
  };
  for (const auto& r : ledger) {
    CHECK_THAT(r.dissipated, WithinAbs(static_cast<double>(closed(r.t)), 1e-10));
    CHECK(std::fabs(r.residual) <= 1e-9);
  }
  CHECK_THAT(ledger.back().total, WithinAbs(0.0, 1e-9));
}

TEST_CASE("ledger input validation", "[energy][errors]") {
  const SpectralState s(1.0, 2);
  CHECK_THROWS_AS(trajectory_ledger(s, FilterSpectrum::zero(2), {0.0, 2.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(trajectory_ledger(s, FilterSpectrum::zero(2), {-1.0}), PreconditionError);
  CHECK_THROWS_AS(trajectory_ledger(s, FilterSpectrum::zero(3), {1.0}), DimensionMismatch);
}

TEST_CASE("perturbed energy examples", "[energy]") {
  std::mt19937_64 rng(34);
  const auto s = random_hermitian_state(rng, 1.0, 6, false);
  CHECK(perturbed_energy(s, 0.25) == energy(s).total);

  SpectralState one(1.0, 2);
  one.set_mode(0, 1.0, 1.0);
  CHECK_THAT(perturbed_energy(one, 0.3), WithinAbs(0.5 + 0.3, 1e-15));
  CHECK_THROWS_AS(perturbed_energy(one, 0.0), PreconditionError);
  CHECK_THROWS_AS(perturbed_energy(one, 0.5), PreconditionError);
}

TEST_CASE("perturbed energy decays exponentially under uniform damping", "[energy]") {
  std::mt19937_64 rng(35);
  const auto s = random_hermitian_state(rng, 1.0, 16, true, true);
  const auto f = FilterSpectrum::constant(16, 1.0);
  std::vector<DecaySample<double>> samples;
  for (double t : grid(0, 20, 200)) {
    const double el = perturbed_energy(propagate_state(s, f, t), 0.25);
    REQUIRE(el > 0.0);
    samples.push_back({t, el});
  }
  const auto fit = fit_decay(samples, std::pair{0.0, 20.0});
  CHECK(fit.gamma_hat > 0.5);
  double worst = 0;
  for (const auto& x : samples) worst = std::max(worst, x.value * std::exp(fit.gamma_hat * x.t) / samples[0].value);
  CHECK(worst < 10.0);
}

TEST_CASE("resolvent solve", "[energy][resolvent]") {
  SECTION("only the zero mode, no damping: u = h") {
    CoeffVector<double> h = CoeffVector<double>::Zero(7);
    h[mode_slot(0, 3)] = 2.5;
    const auto u = resolvent_solve(FilterSpectrum::zero(3), h, 1.0);
    CHECK(u[mode_slot(0, 3)] == std::complex<double>(2.5));
  }
  SECTION("round trip and monotonicity in the damping") {
    std::mt19937_64 rng(36);
    const auto h = random_hermitian_state(rng, 1.0, 20).u_hat();
    const auto f = mixed_filter(20);
    const auto u = resolvent_solve(f, h, 1.0);
    CHECK((forward_operator(f, u, 1.0) - h).cwiseAbs().maxCoeff() <= 1e-12 * h.cwiseAbs().maxCoeff());
    const auto weaker = resolvent_solve(FilterSpectrum::zero(20), h, 1.0);
    for (Eigen::Index i = 0; i < h.size(); ++i) CHECK(std::abs(u[i]) <= std::abs(weaker[i]));
  }
  SECTION("errors") {
    CHECK_THROWS_AS(resolvent_solve(FilterSpectrum::zero(3), CoeffVector<double>(CoeffVector<double>::Zero(5)), 1.0),
                    DimensionMismatch);
  }
}
