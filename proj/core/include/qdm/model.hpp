#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdm {

using Complex = std::complex<double>;

/// Raised for any problem-statement error: malformed files, bad indices,
/// violated ordering, out-of-scope solver requests.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FrequencyUnits { angular, hertz };

/// Energy levels of one dot, listed from the highest energy down.
///
/// Level 0 is the most excited state. With this ordering the transition
/// operator sigma_ij (i < j) raises the dot, so the printed single-mode
/// equations and the photon-ladder offsets are energy conserving. The
/// validator rejects any list that is not strictly decreasing.
struct DotSpec {
  std::vector<double> levels;

  bool operator==(const DotSpec&) const = default;
};

struct ModeSpec {
  double omega = 0.0;

  bool operator==(const ModeSpec&) const = default;
};

/// (dot, i, j) with i < j; 0-based.
struct TransitionKey {
  int dot = 0;
  int i = 0;
  int j = 0;
  auto operator<=>(const TransitionKey&) const = default;
};

/// (dot, i, j, mode) with i < j; 0-based.
struct FieldKey {
  int dot = 0;
  int i = 0;
  int j = 0;
  int mode = 0;
  auto operator<=>(const FieldKey&) const = default;
};

/// Sparse coupling constants. Only i < j entries are stored; the conjugate
/// partners are implied by Hermiticity. Missing entries are zero.
struct CouplingSet {
  std::map<TransitionKey, Complex> gamma;
  std::map<FieldKey, Complex> g;
  std::map<TransitionKey, Complex> eta;

  [[nodiscard]] Complex gamma_at(int dot, int i, int j) const;
  [[nodiscard]] Complex g_at(int dot, int i, int j, int mode) const;
  [[nodiscard]] Complex eta_at(int dot, int i, int j) const;

  bool operator==(const CouplingSet&) const = default;
};

/// One nonzero entry of an initial state: dot levels, photon numbers,
/// complex amplitude (all indices 0-based).
struct InitialAmplitude {
  std::vector<int> levels;
  std::vector<int> photons;
  Complex amplitude{1.0, 0.0};

  bool operator==(const InitialAmplitude&) const = default;
};

struct SystemConfig {
  std::vector<DotSpec> dots;
  std::vector<ModeSpec> modes;
  CouplingSet couplings;
  bool rwa = true;
  int excitation_cap = 0;
  /// When set, only basis states with this excitation number are retained.
  std::optional<int> excitation_shell;
  FrequencyUnits units = FrequencyUnits::angular;
  std::vector<InitialAmplitude> initial_state;

  bool operator==(const SystemConfig&) const = default;
};

/// A SystemConfig that passed validation. All frequencies are angular
/// (rad/s, hbar = 1) and every index is in range.
class ValidatedConfig {
 public:
  [[nodiscard]] const SystemConfig& config() const noexcept { return config_; }

  [[nodiscard]] int dot_count() const noexcept { return static_cast<int>(config_.dots.size()); }
  [[nodiscard]] int mode_count() const noexcept { return static_cast<int>(config_.modes.size()); }
  [[nodiscard]] int level_count(int dot) const;
  [[nodiscard]] std::vector<int> level_counts() const;
  /// N = product of level counts.
  [[nodiscard]] std::size_t dot_state_count() const;

  [[nodiscard]] double level_energy(int dot, int level) const;
  [[nodiscard]] double mode_frequency(int mode) const;
  [[nodiscard]] bool rwa() const noexcept { return config_.rwa; }
  [[nodiscard]] int excitation_cap() const noexcept { return config_.excitation_cap; }
  [[nodiscard]] const CouplingSet& couplings() const noexcept { return config_.couplings; }

  bool operator==(const ValidatedConfig&) const = default;

 private:
  friend ValidatedConfig validate(const SystemConfig& config);
  explicit ValidatedConfig(SystemConfig config) : config_(std::move(config)) {}
  SystemConfig config_;
};

/// Checks every invariant and converts Hz inputs to rad/s. Idempotent:
/// validate(validate(c).config()) == validate(c).
ValidatedConfig validate(const SystemConfig& config);

/// Signed transition frequency (E_a - E_b)/hbar of dot n. Throws
/// std::invalid_argument for a == b or out-of-range indices.
double transition_frequency(const ValidatedConfig& config, int dot, int a, int b);

/// Mode frequency minus the positive transition frequency between levels a
/// and b of the given dot.
double detuning(const ValidatedConfig& config, int dot, int a, int b, int mode);

/// Sum of dot level energies plus photon energies, i.e. the eigenvalue of
/// the bare Hamiltonian on |levels>|photons>.
double bare_energy(const ValidatedConfig& config, const std::vector<int>& levels,
                   const std::vector<int>& photons);

}  // namespace qdm
