#include "fdwave/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fdwave/config.hpp"
#include "fdwave/energy.hpp"
#include "fdwave/io.hpp"
#include "fdwave/norms.hpp"
#include "fdwave/propagator.hpp"
#include "fdwave/rk4_oracle.hpp"
#include "fdwave/transform.hpp"

namespace fdwave::scenarios {

namespace {

constexpr double kPi = std::numbers::pi;

std::ofstream open_out(const std::filesystem::path& p) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error("cannot write '" + p.string() + "'");
  return os;
}

std::string time_label(double t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

}  // namespace

SpectralState figure1_initial_state(std::uint64_t seed, int k_max) {
  return random_state(1.0, k_max, seed, 1.0, false);
}

FilterSpectrum figure1_filter(int k_max, int k0) { return FilterSpectrum::indicator(k_max, k0); }

Figure1Bundle scenario_figure1(const Figure1Options& opts) {
  auto initial = figure1_initial_state(opts.seed, opts.k_max);
  auto filter = figure1_filter(opts.k_max, opts.k0);
  const ProjectionFilter pf(filter);

  std::vector<Snapshot> snaps;
  for (double t : opts.snapshot_times) {
    const auto s = propagate_state(initial, filter, t);
    const auto q = project(s, pf, Part::Q);
    snaps.push_back({t, synthesize_u(s, opts.grid_points), synthesize_u(q, opts.grid_points)});
  }

  std::vector<DecaySample<double>> distance;
  const double e_q0 = energy(project(initial, pf, Part::Q)).total;
  double drift = 0;
  const auto n = static_cast<long>(std::llround(opts.distance_t_end / opts.distance_dt));
  for (long i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * opts.distance_dt;
    const auto s = propagate_state(initial, filter, t);
    const auto p = project(s, pf, Part::P);
    distance.push_back({t, std::sqrt(h1_norm_sq(p))});
    const double e_q = energy(project(s, pf, Part::Q)).total;
    if (e_q0 > 0) drift = std::max(drift, std::abs(e_q - e_q0) / e_q0);
  }
  auto fit = fit_decay(distance, std::optional(opts.fit_window));
  return {std::move(initial), std::move(filter), std::move(snaps), std::move(distance), fit, drift};
}

void write_figure1(const Figure1Bundle& b, const std::filesystem::path& out_dir) {
  const auto dir = out_dir / "figure1";
  for (const auto& s : b.snapshots) {
    auto os = open_out(dir / ("snap_t" + time_label(s.t) + ".csv"));
    os << "x,u,q\n";
    for (Eigen::Index j = 0; j < s.u.size(); ++j)
      os << io::format_double(s.u.x(j)) << ',' << io::format_double(s.u.samples()[j]) << ','
         << io::format_double(s.q.samples()[j]) << '\n';
  }
  auto os = open_out(dir / "distance.csv");
  os << "t,distance\n";
  for (const auto& d : b.distance) os << io::format_double(d.t) << ',' << io::format_double(d.value) << '\n';
  auto js = open_out(dir / "summary.json");
  js << io::dump({{"fit", io::to_json(b.fit)},
                  {"q_energy_drift", b.q_energy_drift},
                  {"initial", io::state_to_json(b.initial)},
                  {"filter", io::filter_to_json(b.filter)}});
}

SpectralState example33_initial_state(int k_max) {
  SpectralState s(1.0, k_max);
  s.set_mode(1, 0.0, 1.0);
  return s;
}

FilterSpectrum example33_filter(int k_max) {
  return FilterSpectrum::from_function(k_max, [](int k) { return k == 1 ? 4.0 * kPi : 0.0; });
}

Example33Bundle scenario_example33(const std::vector<double>& times_in) {
  std::vector<double> times = times_in;
  if (times.empty())
    for (int i = 0; i <= 1000; ++i) times.push_back(0.01 * i);
  auto initial = example33_initial_state();
  auto filter = example33_filter();
  const ProjectionFilter support(FilterSpectrum::from_function(filter.k_max(), [&](int k) {
    return filter(k) > 0 ? 1.0 : 0.0;
  }));

  Example33Bundle b{initial, filter, {}, 0, 0, 0, {}};
  for (double t : times) {
    const auto s = propagate_state(initial, filter, t);
    const double closed = t * std::exp(-2 * kPi * t);
    const double dist = h1_norm_sq(project(s, support, Part::P));
    const double dist_closed = 2 * (1 + 4 * kPi * kPi) * t * t * std::exp(-4 * kPi * t);
    b.rows.push_back({t, s.u(1), s.v(1), closed, dist, dist_closed});
    if (closed > 0) b.max_mode_error = std::max(b.max_mode_error, std::abs(s.u(1) - closed) / closed);
    else b.max_mode_error = std::max(b.max_mode_error, std::abs(s.u(1)));
    if (dist_closed > 0)
      b.max_distance_error = std::max(b.max_distance_error, std::abs(dist - dist_closed) / dist_closed);
  }
  for (double t : {0.1, 1.0, 2.0, 5.0}) {
    const auto r = oracle::rk4_mode<double>(0.0, 1.0, 1, 4 * kPi, 1.0, t, 1e-5);
    b.rk4_max_error = std::max(b.rk4_max_error, std::abs(r.u - t * std::exp(-2 * kPi * t)));
  }
  for (double lo : {1.0, 3.0, 5.0, 7.0}) {
    std::vector<DecaySample<double>> series;
    for (int i = 0; i <= 200; ++i) {
      const double t = lo + 0.01 * i;
      series.push_back({t, std::abs(propagate_state(initial, filter, t).u(1))});
    }
    b.window_fits.push_back(fit_decay(series, std::optional(std::pair{lo, lo + 2.0})));
  }
  return b;
}

void write_example33(const Example33Bundle& b, const std::filesystem::path& out_dir) {
  const auto dir = out_dir / "example33";
  auto os = open_out(dir / "modes.csv");
  os << "t,re_u1,im_u1,re_v1,im_v1,closed_form,distance_sq,distance_sq_closed\n";
  for (const auto& r : b.rows)
    os << io::format_double(r.t) << ',' << io::format_double(r.u1.real()) << ','
       << io::format_double(r.u1.imag()) << ',' << io::format_double(r.v1.real()) << ','
       << io::format_double(r.v1.imag()) << ',' << io::format_double(r.closed_form) << ','
       << io::format_double(r.distance_sq) << ',' << io::format_double(r.distance_sq_closed) << '\n';
  io::json fits = io::json::array();
  for (const auto& f : b.window_fits) fits.push_back(io::to_json(f));
  auto js = open_out(dir / "summary.json");
  js << io::dump({{"mode_series", "u_1(t) = t exp(-2 pi t)"},
                  {"max_mode_error", b.max_mode_error},
                  {"max_distance_error", b.max_distance_error},
                  {"rk4_max_error", b.rk4_max_error},
                  {"critical_rate", 2 * kPi},
                  {"window_fits", fits}});
}

FilterSpectrum example34_filter(int k_max) {
  return FilterSpectrum::from_function(k_max, [](int k) { return 1.0 / (1.0 + k); });
}

CounterexampleCertificate<double> scenario_example34(double gamma, double m, int k_max) {
  return build_counterexample(gamma, m, example34_filter(k_max));
}

void write_example34(const CounterexampleCertificate<double>& c, const NoDecayReport<double>& report,
                     const std::filesystem::path& out_dir) {
  const auto dir = out_dir / "example34";
  auto js = open_out(dir / "certificate.json");
  auto j = io::to_json(c);
  j["verification"] = io::to_json(report);
  js << io::dump(j);
  auto os = open_out(dir / "margins.csv");
  io::write_margins_csv(os, c);
}

}  // namespace fdwave::scenarios
