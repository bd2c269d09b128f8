#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fdwave/io.hpp"
#include "fdwave/spectral_state.hpp"

namespace fdwave {

/// {L, K_max, filter: {...}, initial: {...}} as read from a JSON config.
struct SimulationConfig {
  double length;
  int k_max;
  FilterSpectrum filter;
  SpectralState initial;
};

/// Filter kinds:
///   {"kind": "indicator", "k0": int}          phi = 1 on |k| >= k0
///   {"kind": "table", "values": [...]}        K_max+1 values (k = 0..K) or 2K_max+1 values
///   {"kind": "powertail", "exponent": p}      phi = (1 + |k|)^{-p}
///   {"kind": "constant", "value": c}
FilterSpectrum parse_filter(const io::json& j, int k_max);

/// Compact command-line form: "indicator:3", "powertail:1", "constant:0.5",
/// "table:0.1,0.2,...", or a JSON object.
FilterSpectrum parse_filter_spec(const std::string& spec, int k_max);

/// Initial data kinds:
///   {"kind": "modes", "coeffs": [{"k": int, "u": [re, im], "v": [re, im]}, ...]}
///   {"kind": "random", "seed": int, "decay": real, "velocity": bool}
SpectralState parse_initial(const io::json& j, double length, int k_max);

/// Coefficients of magnitude (1 + |k|)^{-decay} with seeded uniform phases;
/// the zero mode gets a seeded sign. Velocity is drawn the same way when requested.
SpectralState random_state(double length, int k_max, std::uint64_t seed, double decay,
                           bool velocity = false);

SimulationConfig parse_config(const io::json& j);
SimulationConfig load_config(const std::filesystem::path& path);
io::json load_json(const std::filesystem::path& path);

/// "0,1,2.5" or "start:step:end" ranges (inclusive), comma-joinable.
std::vector<double> parse_times(const std::string& text);

}  // namespace fdwave
