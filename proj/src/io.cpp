#include "fdwave/io.hpp"

#include <cstdio>
#include <ostream>

namespace fdwave::io {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

json coeffs_to_json(const CoeffVector<double>& c) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < c.size(); ++i) arr.push_back({c[i].real(), c[i].imag()});
  return arr;
}

CoeffVector<double> coeffs_from_json(const json& j, int k_max, const char* name) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(2 * k_max + 1))
    throw ConfigError(std::string(name) + " must be an array of 2*K_max+1 [re, im] pairs");
  CoeffVector<double> c(2 * k_max + 1);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw ConfigError(std::string(name) + " entries must be [re, im] number pairs");
    c[static_cast<Eigen::Index>(i)] = {e[0].get<double>(), e[1].get<double>()};
  }
  return c;
}

}  // namespace

json state_to_json(const SpectralState& s) {
  return {{"L", s.length()},
          {"K_max", s.k_max()},
          {"u_hat", coeffs_to_json(s.u_hat())},
          {"v_hat", coeffs_to_json(s.v_hat())}};
}

SpectralState state_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("state must be a JSON object");
  if (!j.contains("L") || !j["L"].is_number()) throw ConfigError("state: missing numeric L");
  if (!j.contains("K_max") || !j["K_max"].is_number_integer())
    throw ConfigError("state: missing integer K_max");
  const int k_max = j["K_max"].get<int>();
  if (k_max < 1) throw ConfigError("state: K_max must be >= 1");
  auto u = coeffs_from_json(j.at("u_hat"), k_max, "u_hat");
  CoeffVector<double> v = j.contains("v_hat") ? coeffs_from_json(j["v_hat"], k_max, "v_hat")
                                              : CoeffVector<double>::Zero(2 * k_max + 1);
  try {
    return SpectralState(j["L"].get<double>(), k_max, std::move(u), std::move(v));
  } catch (const Error& e) {
    throw ConfigError(std::string("state: ") + e.what());
  }
}

json filter_to_json(const FilterSpectrum& f) {
  json values = json::array();
  for (Eigen::Index i = 0; i < f.values().size(); ++i) values.push_back(f.values()[i]);
  return {{"K_max", f.k_max()}, {"phi_hat", values}};
}

void write_grid_csv(std::ostream& os, const GridField& u, const GridField* v) {
  if (v && v->size() != u.size()) throw DimensionMismatch("grid sizes differ");
  os << (v ? "x,u,v\n" : "x,u\n");
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    os << format_double(u.x(j)) << ',' << format_double(u.samples()[j]);
    if (v) os << ',' << format_double(v->samples()[j]);
    os << '\n';
  }
}

void write_ledger_csv(std::ostream& os, const std::vector<EnergyRecord<double>>& ledger) {
  os << "t,kinetic,potential,total,dissipated,residual\n";
  for (const auto& r : ledger)
    os << format_double(r.t) << ',' << format_double(r.kinetic) << ',' << format_double(r.potential)
       << ',' << format_double(r.total) << ',' << format_double(r.dissipated) << ','
       << format_double(r.residual) << '\n';
}

json to_json(const OracleReport& r) {
  return {{"max_discrepancy", r.max_discrepancy},
          {"worst_mode", r.worst_mode},
          {"steps", r.steps},
          {"dt", r.dt},
          {"t_end", r.t_end}};
}

json to_json(const SplitReport& r) {
  json modes = json::array();
  for (const auto& m : r.per_mode) modes.push_back({{"k", m.k}, {"q_err", m.q_err}, {"p_err", m.p_err}});
  return {{"q_max_err", r.q_max_err},
          {"p_max_err", r.p_max_err},
          {"tolerance", r.tolerance},
          {"passed", r.passed()},
          {"per_mode", modes}};
}

json to_json(const DecayFit<double>& f) {
  return {{"gamma_hat", f.gamma_hat},
          {"log_prefactor", f.log_prefactor},
          {"rms_residual", f.rms_residual},
          {"window", {f.t_lo, f.t_hi}},
          {"samples_used", f.samples_used}};
}

json to_json(const CounterexampleCertificate<double>& c) {
  json times = json::array(), margins = json::array();
  for (const auto& m : c.margins) {
    times.push_back(m.t);
    margins.push_back(m.margin);
  }
  json detail = json::array();
  for (const auto& m : c.margins)
    detail.push_back({{"n", m.n},
                      {"t_n", m.t},
                      {"lhs", m.lhs},
                      {"rhs", m.rhs},
                      {"margin", m.margin},
                      {"lhs_unsquared", m.lhs_unsquared},
                      {"rhs_unsquared", m.rhs_unsquared}});
  return {{"k0", c.k0},
          {"gamma", c.gamma},
          {"M", c.m},
          {"phi_k0", c.phi_k0()},
          {"frequency", c.frequency},
          {"n0", c.n0},
          {"u0", coeffs_to_json(c.initial.u_hat())},
          {"v0", coeffs_to_json(c.initial.v_hat())},
          {"L", c.initial.length()},
          {"K_max", c.initial.k_max()},
          {"filter", filter_to_json(c.filter)},
          {"times", times},
          {"margins", margins},
          {"margin_detail", detail}};
}

json to_json(const NoDecayReport<double>& r) {
  return {{"holds", r.holds},
          {"conditions_hold", r.conditions_hold},
          {"min_margin", r.min_margin},
          {"min_margin_unsquared", r.min_margin_unsquared},
          {"envelope_error", r.envelope_error},
          {"max_stored_discrepancy", r.max_stored_discrepancy},
          {"rk4_relative_error", r.rk4_relative_error},
          {"rk4_margin", r.rk4_margin}};
}

void write_margins_csv(std::ostream& os, const CounterexampleCertificate<double>& c) {
  os << "n,t_n,lhs,rhs,margin\n";
  for (const auto& m : c.margins)
    os << m.n << ',' << format_double(m.t) << ',' << format_double(m.lhs) << ','
       << format_double(m.rhs) << ',' << format_double(m.margin) << '\n';
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace fdwave::io
