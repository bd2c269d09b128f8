#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "fdwave/energy.hpp"
#include "fdwave/norms.hpp"
#include "fdwave/splitting.hpp"
#include "test_support.hpp"

using namespace fdwave;
using namespace fdwave::testing;
using Catch::Matchers::WithinRel;

namespace {
constexpr double pi = std::numbers::pi;

std::vector<double> grid(double t0, double t1, int n) {
  std::vector<double> t;
  for (int i = 0; i <= n; ++i) t.push_back(t0 + (t1 - t0) * i / n);
  return t;
}

std::complex<double> inner_product(const SpectralState& a, const SpectralState& b) {
  return inner(a.u_hat(), b.u_hat()) + inner(a.v_hat(), b.v_hat());
}
}  // namespace

TEST_CASE("projection examples", "[splitting]") {
  std::mt19937_64 rng(41);
  const auto s = random_hermitian_state(rng, 1.0, 10);

  const ProjectionFilter all(FilterSpectrum::constant(10, 1.0));
  CHECK(project(s, all, Part::P).u_hat() == s.u_hat());
  CHECK(project(s, all, Part::Q).u_hat().cwiseAbs().maxCoeff() == 0.0);

  const ProjectionFilter high(FilterSpectrum::indicator(10, 3));
  const auto q = project(s, high, Part::Q);
  for (int k = -10; k <= 10; ++k) {
    if (std::abs(k) <= 2) CHECK(q.u(k) == s.u(k));
    else CHECK(q.u(k) == 0.0);
  }
  CHECK(project(q, high, Part::P).u_hat().cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(ProjectionFilter(FilterSpectrum::constant(10, 0.5)), PreconditionError);
}

TEST_CASE("P and Q are orthogonal and complementary", "[splitting][property]") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const int k_max = 1 + static_cast<int>(rng() % 30);
    const int k0 = static_cast<int>(rng() % (k_max + 1));
    const ProjectionFilter pf(FilterSpectrum::indicator(k_max, k0));
    const auto s = random_hermitian_state(rng, 1.0, k_max);
    const auto p = project(s, pf, Part::P), q = project(s, pf, Part::Q);
    CHECK(inner_product(p, q) == std::complex<double>(0.0));
    CHECK(std::fabs(energy_norm_sq(s) - energy_norm_sq(p) - energy_norm_sq(q)) <=
          1e-12 * energy_norm_sq(s));
    CHECK((p.u_hat() + q.u_hat() - s.u_hat()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("projection commutes with the evolution", "[splitting][property]") {
  std::mt19937_64 rng(43);
  const auto f = FilterSpectrum::indicator(20, 3);
  const ProjectionFilter pf(f);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = random_hermitian_state(rng, 1.0, 20);
    const double t = 0.3 + trial;
    for (Part which : {Part::P, Part::Q}) {
      const auto a = project(propagate_state(s, f, t), pf, which);
      const auto b = propagate_state(project(s, pf, which), f, t);
      CHECK((a.u_hat() - b.u_hat()).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK((a.v_hat() - b.v_hat()).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("Q-part energy is conserved", "[splitting]") {
  std::mt19937_64 rng(44);
  const auto s = random_hermitian_state(rng, 1.0, 20);
  const auto f = FilterSpectrum::indicator(20, 3);
  const ProjectionFilter pf(f);
  const double e0 = energy(project(s, pf, Part::Q)).total;
  for (double t : grid(0, 50, 50))
    CHECK(std::fabs(energy(project(propagate_state(s, f, t), pf, Part::Q)).total - e0) <= 1e-10 * e0);
}

TEST_CASE("split verification on indicator damping", "[splitting]") {
  std::mt19937_64 rng(45);
  const auto s = random_hermitian_state(rng, 1.0, 20);
  const ProjectionFilter pf(FilterSpectrum::indicator(20, 3));
  const auto rep = verify_split(s, pf, grid(0, 10, 40));
  CHECK(rep.passed());
  CHECK(rep.q_max_err <= 1e-10);
  CHECK(rep.p_max_err <= 1e-10);
  CHECK(rep.per_mode.size() == 41);
}

TEST_CASE("splitting edge cases", "[splitting]") {
  std::mt19937_64 rng(46);
  const auto f = FilterSpectrum::indicator(8, 3);
  const ProjectionFilter pf(f);

  SECTION("data with Q[u0] = Q[v0] = 0 keep a zero Q-part") {
    const auto s = project(random_hermitian_state(rng, 1.0, 8), pf, Part::P);
    for (double t : {0.5, 2.0, 9.0})
      CHECK(project(propagate_state(s, f, t), pf, Part::Q).u_hat().cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("low-frequency data are exactly undamped") {
    const auto s = project(random_hermitian_state(rng, 1.0, 8), pf, Part::Q);
    for (double t : {0.5, 2.0, 9.0}) {
      const auto a = propagate_state(s, f, t);
      const auto b = propagate_state(s, FilterSpectrum::zero(8), t);
      CHECK(a.u_hat() == b.u_hat());
      CHECK(a.v_hat() == b.v_hat());
    }
  }
}

TEST_CASE("projected decay on the damped support", "[splitting][decay]") {
  std::mt19937_64 rng(47);
  const auto s = random_hermitian_state(rng, 1.0, 20);
  const ProjectionFilter pf(FilterSpectrum::indicator(20, 3));
  const auto out = projected_decay_bound(s, pf, grid(0, 20, 400), std::pair{0.0, 20.0});
  CHECK(std::fabs(out.gamma_hat - 1.0) <= 0.05);
  for (const auto& x : out.series) CHECK(x.value <= out.m_hat * std::exp(-out.gamma_hat * x.t) * (1 + 1e-12));

  const ProjectionFilter none(FilterSpectrum::zero(20));
  CHECK_THROWS_AS(projected_decay_bound(s, none, grid(0, 20, 40)), PreconditionError);
}

TEST_CASE("critical mode: fitted rates creep up towards 4 pi but stay below", "[splitting][decay]") {
  SpectralState s(1.0, 4);
  s.set_mode(1, 0.0, 1.0);
  const auto damping = FilterSpectrum::from_function(4, [](int k) { return k == 1 ? 4 * pi : 0.0; });
  const ProjectionFilter support(FilterSpectrum::from_function(4, [](int k) { return k == 1 ? 1.0 : 0.0; }));
  const auto times = grid(0.01, 12, 1200);
  double prev = 0;
  for (double lo : {2.0, 6.0, 10.0}) {
    const auto out = projected_decay_bound(s, damping, support, times, std::pair{lo, lo + 2.0});
    CHECK(out.gamma_hat > prev);
    CHECK(out.gamma_hat < 4 * pi);
    prev = out.gamma_hat;
  }
  CHECK(4 * pi - prev < 0.3);
}
