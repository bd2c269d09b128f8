#include "fdwave/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace fdwave {

namespace {

using io::json;

double number(const json& j, const char* key, const char* where) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(std::string(where) + ": missing numeric field '" + key + "'");
  const double x = j[key].get<double>();
  if (!std::isfinite(x)) throw ConfigError(std::string(where) + ": '" + key + "' is not finite");
  return x;
}

int integer(const json& j, const char* key, const char* where) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ConfigError(std::string(where) + ": missing integer field '" + key + "'");
  return j[key].get<int>();
}

std::complex<double> complex_pair(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(std::string(where) + ": expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename Fn>
auto rethrow_as_config(const char* where, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string(where) + ": " + e.what());
  }
}

/// Uniform in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

FilterSpectrum parse_filter(const json& j, int k_max) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ConfigError("filter: expected an object with a string 'kind'");
  const auto kind = j["kind"].get<std::string>();
  return rethrow_as_config("filter", [&]() -> FilterSpectrum {
    if (kind == "indicator") {
      const int k0 = integer(j, "k0", "filter");
      if (k0 < 0) throw ConfigError("filter: k0 must be >= 0");
      return FilterSpectrum::indicator(k_max, k0);
    }
    if (kind == "constant") return FilterSpectrum::constant(k_max, number(j, "value", "filter"));
    if (kind == "powertail") {
      const double p = number(j, "exponent", "filter");
      return FilterSpectrum::from_function(k_max, [p](int k) { return std::pow(1.0 + k, -p); });
    }
    if (kind == "table") {
      if (!j.contains("values") || !j["values"].is_array())
        throw ConfigError("filter: table needs a 'values' array");
      const auto& vals = j["values"];
      std::vector<double> v;
      for (const auto& e : vals) {
        if (!e.is_number()) throw ConfigError("filter: table values must be numbers");
        v.push_back(e.get<double>());
      }
      if (v.size() == static_cast<std::size_t>(k_max + 1))
        return FilterSpectrum::from_function(k_max, [&](int k) { return v[static_cast<std::size_t>(k)]; });
      if (v.size() == static_cast<std::size_t>(2 * k_max + 1))
        return FilterSpectrum(Eigen::Map<const RealVector<double>>(v.data(), static_cast<Eigen::Index>(v.size())));
      throw ConfigError("filter: table needs K_max+1 or 2*K_max+1 values");
    }
    throw ConfigError("filter: unknown kind '" + kind + "'");
  });
}

FilterSpectrum parse_filter_spec(const std::string& spec, int k_max) {
  if (!spec.empty() && spec.front() == '{') {
    json j;
    try {
      j = json::parse(spec);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("filter: invalid JSON: ") + e.what());
    }
    return parse_filter(j, k_max);
  }
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("filter: expected kind:parameter, got '" + spec + "'");
  const auto kind = spec.substr(0, colon);
  const auto arg = spec.substr(colon + 1);
  json j = {{"kind", kind}};
  try {
    if (kind == "indicator") {
      j["k0"] = std::stoi(arg);
    } else if (kind == "powertail") {
      j["exponent"] = std::stod(arg);
    } else if (kind == "constant") {
      j["value"] = std::stod(arg);
    } else if (kind == "table") {
      json vals = json::array();
      std::stringstream ss(arg);
      std::string item;
      while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
      j["values"] = vals;
    }
  } catch (const std::logic_error&) {
    throw ConfigError("filter: bad parameter in '" + spec + "'");
  }
  return parse_filter(j, k_max);
}

SpectralState random_state(double length, int k_max, std::uint64_t seed, double decay, bool velocity) {
  std::mt19937_64 rng(seed);
  SpectralState s(length, k_max);
  const double two_pi = 2.0 * std::numbers::pi;
  auto draw = [&](int k) -> std::complex<double> {
    const double mag = std::pow(1.0 + k, -decay);
    if (k == 0) return unit(rng) < 0.5 ? -mag : mag;
    return std::polar(mag, two_pi * unit(rng));
  };
  for (int k = 0; k <= k_max; ++k) {
    const auto u = draw(k);
    const auto v = velocity ? draw(k) : std::complex<double>(0.0);
    s.set_mode(k, u, v);
  }
  return s;
}

SpectralState parse_initial(const json& j, double length, int k_max) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ConfigError("initial: expected an object with a string 'kind'");
  const auto kind = j["kind"].get<std::string>();
  return rethrow_as_config("initial", [&]() -> SpectralState {
    if (kind == "random") {
      const int seed = integer(j, "seed", "initial");
      const double decay = j.contains("decay") ? number(j, "decay", "initial") : 1.0;
      const bool velocity = j.value("velocity", false);
      return random_state(length, k_max, static_cast<std::uint64_t>(seed), decay, velocity);
    }
    if (kind == "modes") {
      if (!j.contains("coeffs") || !j["coeffs"].is_array())
        throw ConfigError("initial: modes needs a 'coeffs' array");
      SpectralState s(length, k_max);
      for (const auto& c : j["coeffs"]) {
        if (!c.is_object()) throw ConfigError("initial: each coeff must be an object");
        const int k = integer(c, "k", "initial");
        if (k < -k_max || k > k_max) throw ConfigError("initial: mode index outside [-K_max, K_max]");
        const auto u = c.contains("u") ? complex_pair(c["u"], "initial.u") : std::complex<double>(0);
        const auto v = c.contains("v") ? complex_pair(c["v"], "initial.v") : std::complex<double>(0);
        s.set_mode(k, u, v);
      }
      return s;
    }
    throw ConfigError("initial: unknown kind '" + kind + "'");
  });
}

SimulationConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const double length = number(j, "L", "config");
  if (!(length > 0)) throw ConfigError("config: L must be positive");
  const int k_max = integer(j, "K_max", "config");
  if (k_max < 1) throw ConfigError("config: K_max must be >= 1");
  if (!j.contains("filter")) throw ConfigError("config: missing 'filter'");
  if (!j.contains("initial")) throw ConfigError("config: missing 'initial'");
  auto filter = parse_filter(j["filter"], k_max);
  auto initial = parse_initial(j["initial"], length, k_max);
  return {length, k_max, std::move(filter), std::move(initial)};
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

SimulationConfig load_config(const std::filesystem::path& path) { return parse_config(load_json(path)); }

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  auto to_double = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double x = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return x;
    } catch (const std::logic_error&) {
      throw ConfigError("times: cannot parse '" + s + "'");
    }
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto c1 = item.find(':');
    if (c1 == std::string::npos) {
      out.push_back(to_double(item));
      continue;
    }
    const auto c2 = item.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ConfigError("times: range must be start:step:end");
    const double start = to_double(item.substr(0, c1));
    const double step = to_double(item.substr(c1 + 1, c2 - c1 - 1));
    const double end = to_double(item.substr(c2 + 1));
    if (!(step > 0)) throw ConfigError("times: range step must be positive");
    const auto n = static_cast<long>(std::floor((end - start) / step + 1e-9));
    if (n < 0) throw ConfigError("times: range end precedes start");
    if (n > 10'000'000) throw ConfigError("times: range has too many points");
    for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  }
  if (out.empty()) throw ConfigError("times: empty list");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(out[i] >= 0)) throw ConfigError("times must be nonnegative");
    if (i > 0 && out[i] < out[i - 1]) throw ConfigError("times must be increasing");
  }
  return out;
}

}  // namespace fdwave
