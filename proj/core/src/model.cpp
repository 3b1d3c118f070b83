#include "qdm/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qdm {

namespace {

template <typename Map, typename Key>
Complex lookup(const Map& map, const Key& key) {
  auto it = map.find(key);
  return it == map.end() ? Complex{} : it->second;
}

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

void check_transition(const SystemConfig& c, int dot, int i, int j, const char* what) {
  std::ostringstream where;
  where << what << "[" << dot + 1 << "][" << i + 1 << "][" << j + 1 << "]";
  if (dot < 0 || dot >= static_cast<int>(c.dots.size())) fail(where.str() + ": dot index out of range");
  const int levels = static_cast<int>(c.dots[dot].levels.size());
  if (i < 0 || j < 0 || i >= levels || j >= levels) fail(where.str() + ": level index out of range");
  if (i >= j) fail(where.str() + ": only entries with i < j may be given");
}

}  // namespace

Complex CouplingSet::gamma_at(int dot, int i, int j) const { return lookup(gamma, TransitionKey{dot, i, j}); }

Complex CouplingSet::g_at(int dot, int i, int j, int mode) const {
  return lookup(g, FieldKey{dot, i, j, mode});
}

Complex CouplingSet::eta_at(int dot, int i, int j) const { return lookup(eta, TransitionKey{dot, i, j}); }

int ValidatedConfig::level_count(int dot) const {
  return static_cast<int>(config_.dots.at(static_cast<std::size_t>(dot)).levels.size());
}

std::vector<int> ValidatedConfig::level_counts() const {
  std::vector<int> counts;
  counts.reserve(config_.dots.size());
  for (const auto& d : config_.dots) counts.push_back(static_cast<int>(d.levels.size()));
  return counts;
}

std::size_t ValidatedConfig::dot_state_count() const {
  std::size_t n = 1;
  for (const auto& d : config_.dots) n *= d.levels.size();
  return n;
}

double ValidatedConfig::level_energy(int dot, int level) const {
  return config_.dots.at(static_cast<std::size_t>(dot)).levels.at(static_cast<std::size_t>(level));
}

double ValidatedConfig::mode_frequency(int mode) const {
  return config_.modes.at(static_cast<std::size_t>(mode)).omega;
}

ValidatedConfig validate(const SystemConfig& input) {
  SystemConfig c = input;

  if (c.dots.empty()) fail("at least one dot is required");
  if (c.modes.empty()) fail("at least one mode is required");
  if (c.excitation_cap < 0) fail("excitation_cap must be non-negative");
  if (c.excitation_shell && *c.excitation_shell < 0) fail("excitation shell must be non-negative");

  for (std::size_t n = 0; n < c.dots.size(); ++n) {
    const auto& levels = c.dots[n].levels;
    if (levels.size() < 2) fail("dot " + std::to_string(n + 1) + " needs at least 2 levels");
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (!std::isfinite(levels[i])) fail("dot " + std::to_string(n + 1) + " has a non-finite level");
      if (i > 0 && !(levels[i] < levels[i - 1])) {
        fail("dot " + std::to_string(n + 1) +
             " levels must be listed from the highest energy down (strictly decreasing)");
      }
    }
  }
  for (std::size_t v = 0; v < c.modes.size(); ++v) {
    if (!(c.modes[v].omega > 0.0) || !std::isfinite(c.modes[v].omega)) {
      fail("mode " + std::to_string(v + 1) + " frequency must be positive");
    }
  }

  for (const auto& [key, value] : c.couplings.gamma) check_transition(c, key.dot, key.i, key.j, "gamma");
  for (const auto& [key, value] : c.couplings.eta) check_transition(c, key.dot, key.i, key.j, "eta");
  for (const auto& [key, value] : c.couplings.g) {
    check_transition(c, key.dot, key.i, key.j, "g");
    if (key.mode < 0 || key.mode >= static_cast<int>(c.modes.size())) {
      fail("g[" + std::to_string(key.dot + 1) + "][" + std::to_string(key.i + 1) + "][" +
           std::to_string(key.j + 1) + "][" + std::to_string(key.mode + 1) + "]: mode index out of range");
    }
  }
  auto finite = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  for (const auto& [k, v] : c.couplings.gamma) if (!finite(v)) fail("non-finite gamma coupling");
  for (const auto& [k, v] : c.couplings.g) if (!finite(v)) fail("non-finite g coupling");
  for (const auto& [k, v] : c.couplings.eta) if (!finite(v)) fail("non-finite eta coupling");

  for (const auto& amp : c.initial_state) {
    if (amp.levels.size() != c.dots.size() || amp.photons.size() != c.modes.size()) {
      fail("initial amplitude label has the wrong number of dots or modes");
    }
    for (std::size_t n = 0; n < amp.levels.size(); ++n) {
      if (amp.levels[n] < 0 || amp.levels[n] >= static_cast<int>(c.dots[n].levels.size())) {
        fail("initial amplitude level index out of range");
      }
    }
    for (int f : amp.photons) {
      if (f < 0) fail("initial amplitude photon number must be non-negative");
    }
  }

  if (c.units == FrequencyUnits::hertz) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double sqrt_two_pi = std::sqrt(two_pi);
    for (auto& d : c.dots)
      for (auto& e : d.levels) e *= two_pi;
    for (auto& m : c.modes) m.omega *= two_pi;
    for (auto& [k, v] : c.couplings.g) v *= two_pi;
    // eta enters as products eta_n * conj(eta_m), which carry frequency units.
    for (auto& [k, v] : c.couplings.eta) v *= sqrt_two_pi;
    c.units = FrequencyUnits::angular;
  }

  return ValidatedConfig(std::move(c));
}

double transition_frequency(const ValidatedConfig& config, int dot, int a, int b) {
  if (dot < 0 || dot >= config.dot_count()) throw std::invalid_argument("transition_frequency: dot out of range");
  const int levels = config.level_count(dot);
  if (a < 0 || b < 0 || a >= levels || b >= levels) {
    throw std::invalid_argument("transition_frequency: level out of range");
  }
  if (a == b) throw std::invalid_argument("transition_frequency: levels must differ");
  return config.level_energy(dot, a) - config.level_energy(dot, b);
}

double detuning(const ValidatedConfig& config, int dot, int a, int b, int mode) {
  if (mode < 0 || mode >= config.mode_count()) throw std::invalid_argument("detuning: mode out of range");
  return config.mode_frequency(mode) - std::abs(transition_frequency(config, dot, a, b));
}

double bare_energy(const ValidatedConfig& config, const std::vector<int>& levels,
                   const std::vector<int>& photons) {
  double e = 0.0;
  for (std::size_t n = 0; n < levels.size(); ++n) e += config.level_energy(static_cast<int>(n), levels[n]);
  for (std::size_t v = 0; v < photons.size(); ++v) {
    e += config.mode_frequency(static_cast<int>(v)) * photons[v];
  }
  return e;
}

}  // namespace qdm
