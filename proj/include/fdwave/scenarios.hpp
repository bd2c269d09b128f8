#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "fdwave/counterexample.hpp"
#include "fdwave/decay.hpp"
#include "fdwave/splitting.hpp"
#include "fdwave/spectral_state.hpp"

namespace fdwave::scenarios {

// Damping acts on the high frequencies |k| >= k0; Q keeps the conservative
// low-frequency part.
struct Figure1Options {
  std::uint64_t seed = 20;
  int k_max = 20;
  int k0 = 3;
  Eigen::Index grid_points = 256;
  std::vector<double> snapshot_times{0.0, 1.0, 2.0, 4.0};
  double distance_t_end = 30.0;
  double distance_dt = 0.01;
  std::pair<double, double> fit_window{5.0, 30.0};
};

struct Snapshot {
  double t;
  GridField u;
  GridField q;  ///< Q[u(t)]
};

struct Figure1Bundle {
  SpectralState initial;
  FilterSpectrum filter;
  std::vector<Snapshot> snapshots;
  std::vector<DecaySample<double>> distance;  ///< ||u(t) - Q[u(t)]||_{H^1}
  DecayFit<double> fit;
  double q_energy_drift;  ///< max |E(Q u(t)) - E(Q u0)| / E(Q u0) over the distance times
};

/// L = 1, v0 = 0, u0 with magnitudes 1/(1+|k|) and seeded phases on |k| <= K_max.
SpectralState figure1_initial_state(std::uint64_t seed = 20, int k_max = 20);
FilterSpectrum figure1_filter(int k_max = 20, int k0 = 3);
Figure1Bundle scenario_figure1(const Figure1Options& opts = {});
void write_figure1(const Figure1Bundle& b, const std::filesystem::path& out_dir);

// phi = 4 pi on |k| = 1 (critical), 0 elsewhere; u0 = 0, v0 = 2 cos(2 pi x).
struct Example33Row {
  double t;
  std::complex<double> u1;
  std::complex<double> v1;
  double closed_form;  ///< t e^{-2 pi t}
  double distance_sq;  ///< ||u - Q u||_{H^1}^2
  double distance_sq_closed;  ///< 2 (1 + (2 pi)^2) t^2 e^{-4 pi t}
};

struct Example33Bundle {
  SpectralState initial;
  FilterSpectrum filter;
  std::vector<Example33Row> rows;
  double max_mode_error;      ///< relative, vs t e^{-2 pi t}
  double max_distance_error;  ///< relative, vs closed-form squared distance
  double rk4_max_error;       ///< |RK4 - closed form| at the spot-check times
  std::vector<DecayFit<double>> window_fits;  ///< fits of |u_1(t)| on sliding windows
};

SpectralState example33_initial_state(int k_max = 4);
FilterSpectrum example33_filter(int k_max = 4);
Example33Bundle scenario_example33(const std::vector<double>& times = {});
void write_example33(const Example33Bundle& b, const std::filesystem::path& out_dir);

FilterSpectrum example34_filter(int k_max = 64);
CounterexampleCertificate<double> scenario_example34(double gamma = 0.1, double m = 10.0, int k_max = 64);
void write_example34(const CounterexampleCertificate<double>& c, const NoDecayReport<double>& report,
                     const std::filesystem::path& out_dir);

}  // namespace fdwave::scenarios
