#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

namespace qdm::testing {

BasisLabel label_a(int n1, int n2) { return {{0, 0}, {n1, n2}}; }
BasisLabel label_b(int n1, int n2) { return {{0, 1}, {n1, n2}}; }
BasisLabel label_c(int n1, int n2) { return {{1, 0}, {n1, n2}}; }
BasisLabel label_d(int n1, int n2) { return {{1, 1}, {n1, n2}}; }

namespace {

SystemConfig two_dot_two_mode_hz() {
  SystemConfig c;
  c.units = FrequencyUnits::hertz;
  // omega_ab / 2 = omega_cd / 2 = Omega_1 / 2pi = 2e13 Hz, Omega_2 / 2pi = 3e13 Hz
  c.dots = {DotSpec{{4e13, 0.0}}, DotSpec{{4e13, 0.0}}};
  c.modes = {ModeSpec{2e13}, ModeSpec{3e13}};
  for (int n = 0; n < 2; ++n) {
    c.couplings.gamma[{n, 0, 1}] = 1.0;
    c.couplings.g[{n, 0, 1, 0}] = 2e13;
    c.couplings.g[{n, 0, 1, 1}] = 3e13;
  }
  return c;
}

}  // namespace

SystemConfig twin_dot_config() {
  SystemConfig c = two_dot_two_mode_hz();
  c.excitation_cap = 2;
  c.excitation_shell = 2;
  c.initial_state = {InitialAmplitude{{0, 0}, {0, 0}, 1.0}};
  return c;
}

SystemConfig dipole_config(int cap) {
  SystemConfig c = two_dot_two_mode_hz();
  c.couplings.eta[{0, 0, 1}] = 3e6;
  c.couplings.eta[{1, 0, 1}] = 3e6;
  c.excitation_cap = cap;
  return c;
}

SystemConfig concurrence_config() {
  SystemConfig c;
  c.units = FrequencyUnits::angular;
  c.dots = {DotSpec{{0.2e14, 0.0}}, DotSpec{{0.3e14, 0.0}}};
  c.modes = {ModeSpec{0.2e14}, ModeSpec{0.3e14}};
  const double eta = std::sqrt(0.2e14);
  for (int n = 0; n < 2; ++n) {
    c.couplings.gamma[{n, 0, 1}] = 1.0;
    c.couplings.g[{n, 0, 1, 0}] = 0.2e14;
    c.couplings.g[{n, 0, 1, 1}] = 0.3e14;
    c.couplings.eta[{n, 0, 1}] = eta;
  }
  return c;
}

SystemConfig single_mode_config(const SingleModeParams& p) {
  SystemConfig c;
  c.dots = {DotSpec{{p.omega1, 0.0}}, DotSpec{{p.omega2, 0.0}}};
  c.modes = {ModeSpec{p.mode}};
  const double eta = std::sqrt(p.p2);
  for (int n = 0; n < 2; ++n) {
    c.couplings.gamma[{n, 0, 1}] = 1.0;
    c.couplings.g[{n, 0, 1, 0}] = p.p1;
    c.couplings.eta[{n, 0, 1}] = eta;
  }
  c.excitation_cap = p.cap;
  c.initial_state = {InitialAmplitude{{0, 0}, {0}, 1.0}};
  return c;
}

SystemConfig jcm_config(double omega, double mode, double g, int photons) {
  SystemConfig c;
  c.dots = {DotSpec{{omega, 0.0}}};
  c.modes = {ModeSpec{mode}};
  c.couplings.gamma[{0, 0, 1}] = 1.0;
  c.couplings.g[{0, 0, 1, 0}] = g;
  c.excitation_cap = photons + 1;
  c.initial_state = {InitialAmplitude{{0}, {photons}, 1.0}};
  return c;
}

Complex random_complex(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  return {normal(rng), normal(rng)};
}

AmplitudeVector random_state(std::mt19937_64& rng, std::size_t n) {
  AmplitudeVector v(n);
  double s = 0.0;
  for (auto& z : v) {
    z = random_complex(rng);
    s += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(s);
  return v;
}

SystemConfig random_config(std::mt19937_64& rng, const std::vector<int>& level_counts, int modes, int cap, bool rwa) {
  std::uniform_real_distribution<double> gap(0.5, 1.5);
  std::uniform_real_distribution<double> freq(0.5, 3.0);
  SystemConfig c;
  c.rwa = rwa;
  c.excitation_cap = cap;
  for (int count : level_counts) {
    std::vector<double> levels(static_cast<std::size_t>(count));
    double e = 0.0;
    for (int i = count - 1; i >= 0; --i) {
      levels[static_cast<std::size_t>(i)] = e;
      e += gap(rng);
    }
    c.dots.push_back(DotSpec{levels});
  }
  for (int v = 0; v < modes; ++v) c.modes.push_back(ModeSpec{freq(rng)});
  for (int n = 0; n < static_cast<int>(level_counts.size()); ++n) {
    for (int i = 0; i < level_counts[static_cast<std::size_t>(n)]; ++i) {
      for (int j = i + 1; j < level_counts[static_cast<std::size_t>(n)]; ++j) {
        c.couplings.gamma[{n, i, j}] = random_complex(rng, 0.7);
        c.couplings.eta[{n, i, j}] = random_complex(rng, 0.5);
        for (int v = 0; v < modes; ++v) c.couplings.g[{n, i, j, v}] = random_complex(rng, 0.7);
      }
    }
  }
  return c;
}

Compiled compile(const SystemConfig& config) {
  ValidatedConfig cfg = validate(config);
  BasisSet basis = build_basis(cfg);
  RabiSystem system = build_rabi_system(cfg, basis);
  return Compiled{std::move(cfg), std::move(basis), std::move(system)};
}

}  // namespace qdm::testing
