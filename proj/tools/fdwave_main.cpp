// fdwave: command-line driver for the filtered-damping wave library.
//
// Exit codes: 0 success, 2 invalid configuration or arguments, 3 a numerical
// check failed, 1 anything else. Errors go to stderr as one line of JSON.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fdwave/config.hpp"
#include "fdwave/counterexample.hpp"
#include "fdwave/cross_validate.hpp"
#include "fdwave/energy.hpp"
#include "fdwave/io.hpp"
#include "fdwave/scenarios.hpp"
#include "fdwave/splitting.hpp"
#include "fdwave/transform.hpp"

namespace fs = std::filesystem;
using namespace fdwave;

namespace {

constexpr const char* kVersion = "fdwave 1.0.0";

bool g_quiet = false;

void progress(const std::string& msg) {
  if (!g_quiet) std::cerr << msg << '\n';
}

void fail_json(const std::string& kind, const std::string& message) {
  std::cerr << io::json{{"error", kind}, {"message", message}}.dump() << '\n';
}

std::ofstream open_file(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error("cannot write '" + p.string() + "'");
  return os;
}

std::string label(double t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

std::pair<double, double> parse_window(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("window must be t_lo,t_hi");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw ConfigError("window must be t_lo,t_hi");
  }
}

ProjectionFilter require_projection(const FilterSpectrum& f) {
  if (!f.is_idempotent())
    throw ConfigError("splitting unavailable: filter values must all be 0 or 1");
  return ProjectionFilter(f);
}

int cmd_simulate(const std::string& config, const std::string& times_text, const fs::path& out,
                 Eigen::Index grid) {
  const auto cfg = load_config(config);
  const auto times = parse_times(times_text);
  const Eigen::Index n = std::max<Eigen::Index>(grid, 2 * cfg.k_max + 1);
  for (double t : times) {
    const auto s = propagate_state(cfg.initial, cfg.filter, t);
    const auto u = synthesize_u(s, n);
    const auto v = synthesize_v(s, n);
    auto os = open_file(out / ("snap_t" + label(t) + ".csv"));
    io::write_grid_csv(os, u, &v);
  }
  const auto ledger = trajectory_ledger(cfg.initial, cfg.filter, times);
  auto os = open_file(out / "ledger.csv");
  io::write_ledger_csv(os, ledger);
  progress("wrote " + std::to_string(times.size()) + " snapshots and ledger.csv to " + out.string());
  return 0;
}

int cmd_validate(const std::string& config, double t, double dt, double tol) {
  const auto cfg = load_config(config);
  try {
    const auto report = cross_validate(cfg.initial, cfg.filter, t, dt);
    std::cout << io::dump(io::to_json(report));
    if (!(report.max_discrepancy <= tol))
      throw CheckFailure("analytic and RK4 solutions differ by " + io::format_double(report.max_discrepancy));
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  return 0;
}

int cmd_energy(const std::string& config, double t_end, int steps, const std::string& out, double tol) {
  const auto cfg = load_config(config);
  if (steps < 1) throw ConfigError("--steps must be >= 1");
  if (!(t_end >= 0)) throw ConfigError("--t-end must be >= 0");
  std::vector<double> times;
  for (int i = 0; i <= steps; ++i) times.push_back(t_end * i / steps);
  const auto ledger = trajectory_ledger(cfg.initial, cfg.filter, times);
  if (out.empty()) {
    io::write_ledger_csv(std::cout, ledger);
  } else {
    auto os = open_file(out);
    io::write_ledger_csv(os, ledger);
  }
  const double e0 = ledger.front().total;
  for (const auto& r : ledger)
    if (std::abs(r.residual) > tol * e0)
      throw CheckFailure("energy balance residual " + io::format_double(r.residual) + " at t = " +
                         io::format_double(r.t));
  return 0;
}

int cmd_split(const std::string& config, const std::string& times_text, double tol) {
  const auto cfg = load_config(config);
  const auto pf = require_projection(cfg.filter);
  const auto report = verify_split(cfg.initial, pf, parse_times(times_text), tol);
  std::cout << io::dump(io::to_json(report));
  if (!report.passed()) throw CheckFailure("split mismatch beyond tolerance");
  return 0;
}

int cmd_decay(const std::string& config, const std::string& window_text, int samples,
              const std::string& quantity) {
  const auto cfg = load_config(config);
  const auto window = parse_window(window_text);
  if (!(window.first >= 0 && window.first < window.second)) throw ConfigError("window must satisfy 0 <= t_lo < t_hi");
  if (samples < 5) throw ConfigError("--samples must be >= 5");
  std::vector<double> times;
  for (int i = 0; i < samples; ++i)
    times.push_back(window.first + (window.second - window.first) * i / (samples - 1));
  try {
    io::json out;
    if (quantity == "energy") {
      std::vector<DecaySample<double>> series;
      for (double t : times) series.push_back({t, energy(propagate_state(cfg.initial, cfg.filter, t)).total});
      out = io::to_json(fit_decay(series, std::optional(window)));
      out["quantity"] = "energy";
    } else if (quantity == "projected") {
      const auto pf = require_projection(cfg.filter);
      const auto r = projected_decay_bound(cfg.initial, pf, times, std::optional(window));
      out = io::to_json(r.fit);
      out["quantity"] = "projected";
      out["M_hat"] = r.m_hat;
    } else {
      throw ConfigError("--quantity must be 'energy' or 'projected'");
    }
    std::cout << io::dump(out);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  return 0;
}

int cmd_counterexample(double gamma, double m, const std::string& filter_spec, int k_max, int count,
                       const std::string& out) {
  if (k_max < 1) throw ConfigError("--kmax must be >= 1");
  const auto filter = parse_filter_spec(filter_spec, k_max);
  CounterexampleCertificate<double> cert = [&] {
    try {
      return build_counterexample(gamma, m, filter, count);
    } catch (const PreconditionError& e) {
      throw ConfigError(e.what());
    }
  }();
  const auto report = verify_no_uniform_decay(cert);
  auto j = io::to_json(cert);
  j["verification"] = io::to_json(report);
  if (out.empty()) {
    std::cout << io::dump(j);
  } else {
    auto js = open_file(fs::path(out) / "certificate.json");
    js << io::dump(j);
    auto cs = open_file(fs::path(out) / "margins.csv");
    io::write_margins_csv(cs, cert);
    progress("wrote certificate.json and margins.csv to " + out);
  }
  if (!report.holds) throw CheckFailure("counterexample margins did not verify");
  return 0;
}

int cmd_resolvent(const std::string& config, const std::string& rhs, const std::string& out) {
  const auto cfg = load_config(config);
  const auto h = io::state_from_json(load_json(rhs));
  if (h.k_max() != cfg.k_max || h.length() != cfg.length)
    throw ConfigError("rhs state must match the config's L and K_max");
  const auto u = resolvent_solve(cfg.filter, h.u_hat(), cfg.length);
  const auto back = forward_operator(cfg.filter, u, cfg.length);
  const double rel = (back - h.u_hat()).norm() / std::max(h.u_hat().norm(), 1e-300);
  const SpectralState solution(cfg.length, cfg.k_max, u, CoeffVector<double>::Zero(u.size()));
  auto j = io::state_to_json(solution);
  j["relative_residual"] = rel;
  if (out.empty()) {
    std::cout << io::dump(j);
  } else {
    auto os = open_file(out);
    os << io::dump(j);
  }
  if (!(rel <= 1e-12)) throw CheckFailure("resolvent round trip residual " + io::format_double(rel));
  return 0;
}

int cmd_scenario(const std::string& name, const fs::path& out) {
  if (name == "figure1") {
    const auto b = scenarios::scenario_figure1();
    scenarios::write_figure1(b, out);
    progress("figure1: fitted rate " + io::format_double(b.fit.gamma_hat));
    if (std::abs(b.fit.gamma_hat - 0.5) > 0.05) throw CheckFailure("figure1 decay rate outside 0.5 +- 0.05");
  } else if (name == "example33") {
    const auto b = scenarios::scenario_example33();
    scenarios::write_example33(b, out);
    progress("example33: max relative error vs t exp(-2 pi t) = " + io::format_double(b.max_mode_error));
    if (b.max_mode_error > 1e-10 || b.rk4_max_error > 1e-8)
      throw CheckFailure("example33 mode series does not match t exp(-2 pi t)");
  } else if (name == "example34") {
    const auto cert = scenarios::scenario_example34();
    const auto report = verify_no_uniform_decay(cert);
    scenarios::write_example34(cert, report, out);
    progress("example34: k0 = " + std::to_string(cert.k0) + ", n0 = " + std::to_string(cert.n0));
    if (!report.holds) throw CheckFailure("example34 certificate did not verify");
  } else {
    throw ConfigError("unknown scenario '" + name + "' (figure1, example33, example34)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver for the 1D wave equation with frequency-filtered damping"};
  app.set_version_flag("--version", kVersion);
  app.add_flag("--quiet", g_quiet, "Suppress progress messages");
  app.require_subcommand(1);
  app.fallthrough();

  std::string config, times, out, rhs, window = "", filter_spec = "powertail:1", quantity = "energy";
  std::string scenario_name;
  double t = 1.0, dt = 1e-4, t_end = 10.0, gamma = 0.1, m = 10.0;
  double validate_tol = 1e-7, energy_tol = 1e-8, split_tol = 1e-10;
  int steps = 100, samples = 200, k_max = 64, count = 11;
  Eigen::Index grid = 256;

  auto* sim = app.add_subcommand("simulate", "Propagate and write grid snapshots plus an energy ledger");
  sim->add_option("--config", config, "Config JSON")->required();
  sim->add_option("--times", times, "Times, e.g. 0,1,2 or 0:0.5:10")->required();
  sim->add_option("--out", out, "Output directory")->required();
  sim->add_option("--grid", grid, "Grid points per snapshot");

  auto* val = app.add_subcommand("validate", "Compare the closed form against RK4");
  val->add_option("--config", config)->required();
  val->add_option("--t", t, "Horizon")->required();
  val->add_option("--dt", dt, "RK4 step")->required();
  val->add_option("--tol", validate_tol, "Maximum accepted discrepancy");

  auto* en = app.add_subcommand("energy", "Energy-dissipation ledger as CSV");
  en->add_option("--config", config)->required();
  en->add_option("--t-end", t_end)->required();
  en->add_option("--steps", steps)->required();
  en->add_option("--out", out, "CSV file (default stdout)");
  en->add_option("--tol", energy_tol, "Maximum |residual| / E(0)");

  auto* sp = app.add_subcommand("split", "P/Q splitting report for an indicator filter");
  sp->add_option("--config", config)->required();
  sp->add_option("--times", times)->required();
  sp->add_option("--tol", split_tol);

  auto* de = app.add_subcommand("decay", "Exponential decay fit");
  de->add_option("--config", config)->required();
  de->add_option("--window", window, "t_lo,t_hi")->required();
  de->add_option("--samples", samples);
  de->add_option("--quantity", quantity, "energy | projected");

  auto* ce = app.add_subcommand("counterexample", "Certificate that no uniform exponential decay holds");
  ce->add_option("--gamma", gamma)->required();
  ce->add_option("--M", m)->required();
  ce->add_option("--filter", filter_spec, "indicator:k0 | powertail:p | constant:c | table:... | JSON");
  ce->add_option("--kmax", k_max);
  ce->add_option("--count", count, "Number of margin times");
  ce->add_option("--out", out, "Directory for certificate.json and margins.csv");

  auto* rs = app.add_subcommand("resolvent", "Solve (-d_xx + P + I) u = h");
  rs->add_option("--config", config)->required();
  rs->add_option("--rhs", rhs, "State JSON whose u_hat is h")->required();
  rs->add_option("--out", out, "Output file (default stdout)");

  auto* sc = app.add_subcommand("scenario", "Canned reproductions");
  sc->add_option("name", scenario_name, "figure1 | example33 | example34")->required();
  sc->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fail_json("usage", e.what());
    return 2;
  }

  try {
    if (*sim) return cmd_simulate(config, times, out, grid);
    if (*val) return cmd_validate(config, t, dt, validate_tol);
    if (*en) return cmd_energy(config, t_end, steps, out, energy_tol);
    if (*sp) return cmd_split(config, times, split_tol);
    if (*de) return cmd_decay(config, window, samples, quantity);
    if (*ce) return cmd_counterexample(gamma, m, filter_spec, k_max, count, out);
    if (*rs) return cmd_resolvent(config, rhs, out);
    if (*sc) return cmd_scenario(scenario_name, out);
  } catch (const ConfigError& e) {
    fail_json(e.kind(), e.what());
    return 2;
  } catch (const CheckFailure& e) {
    fail_json(e.kind(), e.what());
    return 3;
  } catch (const ConvergenceError& e) {
    fail_json(e.kind(), e.what());
    return 3;
  } catch (const Error& e) {
    fail_json(e.kind(), e.what());
    return 2;
  } catch (const std::exception& e) {
    fail_json("internal", e.what());
    return 1;
  }
  return 1;
}
