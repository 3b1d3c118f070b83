#pragma once

#include "qdm/basis.hpp"
#include "qdm/model.hpp"
#include "qdm/rabi.hpp"

#include <random>
#include <vector>

namespace qdm::testing {

/// Letters of the two-dot, two-mode example: a = both up, b = first up,
/// c = first down, d = both down.
BasisLabel label_a(int n1, int n2);
BasisLabel label_b(int n1, int n2);
BasisLabel label_c(int n1, int n2);
BasisLabel label_d(int n1, int n2);

/// Two identical two-level dots, two modes, Hz units, A(0,0) = 1 in the
/// excitation-2 shell. Dipole coupling is off.
SystemConfig twin_dot_config();

/// Same geometry as twin_dot_config with a nonzero dipole coupling and the full
/// photon basis up to `cap` (no shell filter).
SystemConfig dipole_config(int cap);

/// Two different two-level dots resonant with one mode each, angular units.
SystemConfig concurrence_config();

struct SingleModeParams {
  double omega1 = 2.0e14;  // transition frequency of dot 1
  double omega2 = 2.1e14;  // transition frequency of dot 2
  double mode = 2.03e14;
  double p1 = 2.0e13;      // gamma * g
  double p2 = 1.0e13;      // eta_1 * conj(eta_2)
  int cap = 4;
};

/// Two two-level dots, one mode, real couplings, angular units.
SystemConfig single_mode_config(const SingleModeParams& p);

/// One two-level dot in one mode.
SystemConfig jcm_config(double omega, double mode, double g, int photons);

/// Random configuration with O(1) frequencies: strictly decreasing levels,
/// complex gamma, g, eta on every transition.
SystemConfig random_config(std::mt19937_64& rng, const std::vector<int>& level_counts, int modes, int cap, bool rwa);

Complex random_complex(std::mt19937_64& rng, double scale = 1.0);
/// Uniformly random unit vector.
AmplitudeVector random_state(std::mt19937_64& rng, std::size_t n);

struct Compiled {
  ValidatedConfig config;
  BasisSet basis;
  RabiSystem system;
};

Compiled compile(const SystemConfig& config);

}  // namespace qdm::testing
