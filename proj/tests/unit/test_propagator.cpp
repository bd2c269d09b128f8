#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "fdwave/energy.hpp"
#include "fdwave/norms.hpp"
#include "fdwave/propagator.hpp"
#include "fdwave/rk4_oracle.hpp"
#include "fdwave/splitting.hpp"
#include "test_support.hpp"

using namespace fdwave;
using namespace fdwave::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using C = std::complex<double>;

namespace {
constexpr double pi = std::numbers::pi;

// Closed form written with cosh/sinh or cos/sin of sqrt(|Delta|) t / 2, in long double.
long double textbook_u(long double u0, long double v0, int k, long double phi, long double length,
                       long double t) {
  const long double w = 4 * kPiL * k / length;
  const long double delta = phi * phi - w * w;
  const long double e = std::exp(-phi * t / 2);
  const long double a = 0.5L * std::sqrt(std::fabs(delta));
  if (delta > 0) return e * (u0 * std::cosh(a * t) + (v0 + phi * u0 / 2) * std::sinh(a * t) / a);
  if (delta < 0) return e * (u0 * std::cos(a * t) + (v0 + phi * u0 / 2) * std::sin(a * t) / a);
  return e * (u0 + (v0 + phi * u0 / 2) * t);
}

double rel(C a, C b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST_CASE("classification examples", "[propagator]") {
  CHECK(classify(0, 0.0, 1.0).regime == DampingRegime::Critical);
  CHECK(classify(1, 4 * pi, 1.0).regime == DampingRegime::Critical);
  CHECK(classify(1, 1.0, 1.0).regime == DampingRegime::Underdamped);
  CHECK(classify(1, 100.0, 1.0).regime == DampingRegime::Overdamped);
  CHECK(classify(0, 2.0, 1.0).regime == DampingRegime::Overdamped);
  CHECK(classify(3, 0.0, 1.0).regime == DampingRegime::Underdamped);
}

TEST_CASE("characteristic roots at the listed points", "[propagator]") {
  const auto r0 = characteristic_roots(0, 0.0, 1.0);
  CHECK(r0.plus == C(0.0));
  CHECK(r0.minus == C(0.0));

  const auto r1 = characteristic_roots(1, 4 * pi, 1.0);
  CHECK_THAT(r1.plus.real(), WithinRel(-2 * pi, 1e-15));
  CHECK_THAT(r1.minus.real(), WithinRel(-2 * pi, 1e-15));

  // k = 2, L = 1, phi = 100 against the quadratic formula in long double.
  const long double phi = 100, w2 = 16 * kPiL * kPiL;
  const long double s = std::sqrt(phi * phi - 4 * w2);
  const auto r2 = characteristic_roots(2, 100.0, 1.0);
  CHECK_THAT(r2.plus.real(), WithinRel(static_cast<double>((-phi + s) / 2), 1e-14));
  CHECK_THAT(r2.minus.real(), WithinRel(static_cast<double>((-phi - s) / 2), 1e-14));
  CHECK(r2.plus.imag() == 0.0);
}

TEST_CASE("characteristic roots satisfy the quadratic and lie in the closed left half-plane",
          "[propagator][property]") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lphi(-6, 3), llen(-1, 1);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = static_cast<int>(rng() % 60) - 30;
    const double phi = trial % 7 == 0 ? 0.0 : std::pow(10.0, lphi(rng));
    const double length = std::pow(10.0, llen(rng));
    const auto roots = characteristic_roots(k, phi, length);
    const double w2 = std::pow(2 * pi * k / length, 2);
    const double scale = std::max({1.0, phi * phi, w2});
    for (const C lam : {roots.plus, roots.minus}) {
      CHECK(lam.real() <= 0.0);
      if (classify(k, phi, length).regime != DampingRegime::Critical)
        CHECK(std::abs(lam * lam + phi * lam + w2) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("propagate_mode examples", "[propagator]") {
  const auto crit = propagate_mode<double>(0.0, 1.0, 1, 4 * pi, 1.0, 1.0);
  CHECK_THAT(crit.u.real(), WithinRel(std::exp(-2 * pi), 1e-14));

  for (double t : {0.1, 0.37, 1.0, 5.0}) {
    const auto m = propagate_mode<double>(1.0, 0.0, 1, 0.0, 1.0, t);
    CHECK_THAT(m.u.real(), WithinAbs(std::cos(2 * pi * t), 1e-14));
  }

  const auto under = propagate_mode<double>(1.0, 0.0, 3, 1.0, 1.0, 2.0);
  const auto rk = oracle::rk4_mode<double>(1.0, 0.0, 3, 1.0, 1.0, 2.0, 1e-4);
  CHECK(std::abs(under.u - rk.u) <= 1e-9);
  CHECK(std::abs(under.v - rk.v) <= 1e-9 * 6 * pi);
}

TEST_CASE("propagate_mode agrees with the cosh/sinh and cos/sin forms", "[propagator][oracle]") {
  struct Case { int k; double phi, length, u0, v0; };
  const Case cases[] = {{1, 4 * pi, 1.0, 0.3, -1.2}, {2, 100.0, 1.0, 1.0, 0.5}, {0, 2.0, 2.0, 1.0, 1.0},
                        {5, 0.3, 1.0, -0.7, 2.0},    {3, 1.0, 3.0, 1.0, 0.0},   {4, 60.0, 1.5, 0.2, 0.9}};
  for (const auto& c : cases) {
    for (double t : {0.05, 0.5, 1.0, 2.5}) {
      const auto m = propagate_mode<double>(c.u0, c.v0, c.k, c.phi, c.length, t);
      const long double ref = textbook_u(c.u0, c.v0, c.k, c.phi, c.length, t);
      CHECK(std::abs(m.u.real() - static_cast<double>(ref)) <=
            1e-12 * std::max(1.0, std::fabs(static_cast<double>(ref))));
    }
  }
}

TEST_CASE("returned velocity is the time derivative of u", "[propagator][property]") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> uni(-1, 1);
  const double h = 1e-6;
  for (double phi : {0.0, 0.5, 4 * pi, 40.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const C u0(uni(rng), uni(rng)), v0(uni(rng), uni(rng));
      const double t = 0.2 + std::fabs(uni(rng));
      const auto m = propagate_mode(u0, v0, 1, phi, 1.0, t);
      const auto up = propagate_mode(u0, v0, 1, phi, 1.0, t + h);
      const auto dn = propagate_mode(u0, v0, 1, phi, 1.0, t - h);
      const C fd = (up.u - dn.u) / (2 * h);
      CHECK(std::abs(fd - m.v) <= 1e-6 * std::max(1.0, std::abs(m.v)));
    }
  }
}

TEST_CASE("t = 0 returns the initial data exactly", "[propagator]") {
  const C u0(0.1234567890123, -0.987), v0(1e-300, 3.5);
  for (double phi : {0.0, 1.0, 4 * pi, 1e6}) {
    const auto m = propagate_mode(u0, v0, 1, phi, 1.0, 0.0);
    CHECK(m.u == u0);
    CHECK(m.v == v0);
  }
}

TEST_CASE("semigroup property", "[propagator][property]") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> uni(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = static_cast<int>(rng() % 8);
    const double phi = trial % 3 == 0 ? 4 * pi * k : uni(rng) * 20;
    const double t = uni(rng), s = uni(rng);
    const C u0(1.0, -0.5), v0(0.25, 2.0);
    const auto once = propagate_mode(u0, v0, k, phi, 1.0, t + s);
    const auto a = propagate_mode(u0, v0, k, phi, 1.0, t);
    const auto twice = propagate_mode(a.u, a.v, k, phi, 1.0, s);
    const double scale = std::max({1.0, std::abs(once.u), std::abs(once.v)});
    CHECK(std::abs(once.u - twice.u) <= 1e-12 * scale);
    CHECK(std::abs(once.v - twice.v) <= 1e-12 * scale);
  }
}

TEST_CASE("closed form matches RK4 in each regime", "[propagator][oracle]") {
  const double phis[] = {1.0, 4 * pi, 40.0};
  for (double phi : phis) {
    const auto m = propagate_mode<double>(1.0, 0.5, 1, phi, 1.0, 1.0);
    const auto r = oracle::rk4_mode<double>(1.0, 0.5, 1, phi, 1.0, 1.0, 1e-4);
    CHECK(rel(m.u, r.u) <= 1e-8);
  }
}

TEST_CASE("no jump across the critical boundary", "[propagator]") {
  const double phi_c = 4 * pi;
  const double phi_hi = std::sqrt(16 * pi * pi + 1e-8), phi_lo = std::sqrt(16 * pi * pi - 1e-8);
  REQUIRE(classify(1, phi_hi, 1.0).regime == DampingRegime::Overdamped);
  REQUIRE(classify(1, phi_lo, 1.0).regime == DampingRegime::Underdamped);
  for (double t = 0.0; t <= 10.0; t += 0.25) {
    const long double crit = textbook_u(1.0L, 0.0L, 1, phi_c, 1.0L, t);
    for (double phi : {phi_hi, phi_lo}) {
      const auto m = propagate_mode<double>(1.0, 0.0, 1, phi, 1.0, t);
      CHECK(std::abs(m.u.real() - static_cast<double>(crit)) <= 1e-6);
    }
  }
}

TEST_CASE("strongly overdamped modes stay finite for very long times", "[propagator]") {
  const auto m = propagate_mode<double>(1.0, 1.0, 0, 2.0, 1.0, 1e4);
  CHECK(std::isfinite(m.u.real()));
  CHECK_THAT(m.u.real(), WithinRel(1.5, 1e-14));
  CHECK(std::abs(m.v) < 1e-300);
  const auto big = propagate_mode<double>(1.0, 1.0, 1, 1e8, 1.0, 1e4);
  CHECK(std::isfinite(big.u.real()));
  CHECK(std::isfinite(big.v.real()));
  const auto s = propagate_mode<double>(1.0, 0.0, 2, 1e3, 1.0, 1e5);
  CHECK(std::isfinite(s.u.real()));
}

TEST_CASE("propagated states stay exactly Hermitian", "[propagator][property]") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_hermitian_state(rng, 1.0, 20);
    const auto out = propagate_state(s, mixed_filter(20), 0.3 * (trial + 1));
    for (int k = 0; k <= 20; ++k) {
      CHECK(out.u(-k) == std::conj(out.u(k)));
      CHECK(out.v(-k) == std::conj(out.v(k)));
    }
    CHECK(out.u(0).imag() == 0.0);
  }
}

TEST_CASE("energy is conserved without damping and nonincreasing with it", "[propagator][property]") {
  std::mt19937_64 rng(6);
  const auto s = random_hermitian_state(rng, 1.0, 20);
  const double e0 = energy(s).total;
  for (double t : {0.5, 3.0, 17.0, 100.0})
    CHECK(std::fabs(energy(propagate_state(s, FilterSpectrum::zero(20), t)).total - e0) <= 1e-10 * e0);

  std::uniform_real_distribution<double> uni(0, 20);
  const auto f = mixed_filter(20);
  for (int trial = 0; trial < 100; ++trial) {
    double a = uni(rng), b = uni(rng);
    if (a > b) std::swap(a, b);
    const double ea = energy(propagate_state(s, f, a)).total;
    const double eb = energy(propagate_state(s, f, b)).total;
    CHECK(eb <= ea * (1 + 1e-12));
  }
}

TEST_CASE("indicator damping: high-frequency content decays like e^{-t/2}", "[propagator]") {
  std::mt19937_64 rng(20);
  const auto s = random_hermitian_state(rng, 1.0, 20, false);
  const auto f = FilterSpectrum::indicator(20, 3);
  const ProjectionFilter pf(f);
  // Each damped mode obeys |u_k(t)| <= e^{-t/2} (1 + 1/(2 beta_k)) |u_k(0)| when v0 = 0.
  const double beta_min = std::sqrt(std::pow(12 * pi, 2) - 1) / 2;
  const double c = (1 + 1 / (2 * beta_min)) * std::sqrt(h1_norm_sq(project(s, pf, Part::P)));
  for (double t : {0.0, 1.0, 2.0, 4.0}) {
    const auto p = project(propagate_state(s, f, t), pf, Part::P);
    CHECK(std::sqrt(h1_norm_sq(p)) <= c * std::exp(-t / 2));
  }
}

TEST_CASE("propagator error paths", "[propagator][errors]") {
  SpectralState s(1.0, 3);
  CHECK_THROWS_AS(propagate_state(s, FilterSpectrum::zero(4), 1.0), DimensionMismatch);
  CHECK_THROWS_AS(propagate_state(s, FilterSpectrum::zero(3), -1.0), PreconditionError);
  CHECK_THROWS_AS(propagate_mode<double>(1.0, 0.0, 1, -1.0, 1.0, 1.0), PreconditionError);
  CHECK_THROWS_AS(propagate_mode<double>(C(NAN, 0), 0.0, 1, 1.0, 1.0, 1.0), InvalidInput);
}
