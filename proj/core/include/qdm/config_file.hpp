#pragma once

#include "qdm/model.hpp"
#include "qdm/numeric.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace qdm {

/// What a run should do besides defining the physical system.
struct SimulationSettings {
  /// "analytic", "euler" or "rk4".
  std::string solver = "rk4";
  double dt = kDefaultTimeStep;
  double t_end = 1e-13;
  std::size_t output_stride = 1;
  int concurrence_n_max = 3;
  /// Basis label whose amplitude is transformed in spectrum mode.
  std::optional<std::string> spectrum_label;
  /// "abs", "re", "im" or "complex".
  std::string spectrum_quantity = "abs";
};

struct ConfigFile {
  SystemConfig system;
  SimulationSettings simulation;
  /// Verbatim text the configuration was parsed from.
  std::string text;
};

/// INI-style problem statement. Sections, all indices 1-based:
///
///   [system]      units = angular|hz, rwa = true|false, excitation_cap, excitation_shell
///   [dots]        dot1 = E_1, E_2, ...        (highest level first)
///   [modes]       mode1 = Omega_1
///   [couplings]   gamma[n][i][j] = re, im    g[n][i][j][nu] = re, im    eta[n][i][j] = re, im
///   [initial]     A11_F00 = re, im
///   [simulation]  solver, dt, t_end, output_stride
///   [concurrence] n_max
///   [spectrum]    label, quantity
///
/// Throws ConfigError on malformed input. The result is not yet validated.
ConfigFile parse_config(const std::string& text);
ConfigFile load_config(const std::filesystem::path& path);

}  // namespace qdm
