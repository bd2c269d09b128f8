#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

#include "fdwave/counterexample.hpp"
#include "fdwave/cross_validate.hpp"
#include "fdwave/decay.hpp"
#include "fdwave/energy.hpp"
#include "fdwave/splitting.hpp"
#include "fdwave/spectral_state.hpp"

namespace fdwave::io {

using nlohmann::json;

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double x);

/// {"L", "K_max", "u_hat": [[re, im], ...], "v_hat": [...]}, k = -K_max..K_max.
json state_to_json(const SpectralState& s);
SpectralState state_from_json(const json& j);

json filter_to_json(const FilterSpectrum& f);

/// Header `x,u` (or `x,u,v` when a velocity grid is given).
void write_grid_csv(std::ostream& os, const GridField& u, const GridField* v = nullptr);

/// Header `t,kinetic,potential,total,dissipated,residual`.
void write_ledger_csv(std::ostream& os, const std::vector<EnergyRecord<double>>& ledger);

json to_json(const OracleReport& r);
json to_json(const SplitReport& r);
json to_json(const DecayFit<double>& f);
json to_json(const CounterexampleCertificate<double>& c);
json to_json(const NoDecayReport<double>& r);

/// Header `n,t_n,lhs,rhs,margin`.
void write_margins_csv(std::ostream& os, const CounterexampleCertificate<double>& c);

/// Serialises with a trailing newline; doubles keep round-trip precision.
std::string dump(const json& j);

}  // namespace fdwave::io
