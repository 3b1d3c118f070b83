#pragma once

#include "qdm/basis.hpp"
#include "qdm/model.hpp"
#include "qdm/numeric.hpp"
#include "qdm/trajectory.hpp"

#include <map>
#include <span>
#include <utility>
#include <vector>

namespace qdm {

using PhotonPair = std::pair<int, int>;

/// Amplitudes of two two-level dots in two modes, grouped by dot state.
/// a: both dots up, b: first up / second down, c: first down / second up,
/// d: both down, each keyed by the photon pair (n1, n2).
struct AmplitudeQuadruple {
  std::map<PhotonPair, Complex> a;
  std::map<PhotonPair, Complex> b;
  std::map<PhotonPair, Complex> c;
  std::map<PhotonPair, Complex> d;

  [[nodiscard]] double norm() const;
};

/// Throws std::invalid_argument unless every label has two dots with
/// levels in {0, 1} and two photon numbers.
AmplitudeQuadruple quadruple_from_state(const BasisSet& basis, std::span<const Complex> phi);

/// Generalized concurrence over photon indices 0..n1_max and 0..n2_max
/// (inclusive). Missing entries read as zero.
double concurrence(const AmplitudeQuadruple& q, int n1_max, int n2_max);

struct ConcurrenceParams {
  /// Two two-level dots, two modes. Its initial state, cap and shell are
  /// replaced per photon shell.
  SystemConfig config;
  IntegratorSpec integrator;
  int n_max = 3;
  /// Worker threads used for independent shells.
  unsigned jobs = 1;
};

struct ConcurrenceResult {
  std::vector<double> times;
  std::vector<double> lambda;
  /// One trajectory per photon shell, N_sum = 2..n_max.
  std::vector<Trajectory> shells;
  int n1_max = 0;
  int n2_max = 0;
};

/// The configuration simulated for one photon shell: amplitude 1 on both
/// dots up with photons (1, n_sum - 1), basis restricted to the excitation
/// shell that state belongs to.
SystemConfig shell_config(const SystemConfig& base, int n_sum);

/// Integrates every shell N_sum = 2..n_max independently, superposes them
/// with equal weight and evaluates the concurrence at each output time.
/// Throws std::invalid_argument for n_max < 2.
ConcurrenceResult concurrence_run(const ConcurrenceParams& params);

struct SpectrumPoint {
  double freq_hz = 0.0;
  double magnitude = 0.0;
};

/// |DFT|/N of a uniformly sampled series, sorted by frequency (negative
/// frequencies included for complex input). Throws std::invalid_argument
/// for an empty series or dt <= 0.
std::vector<SpectrumPoint> dft_spectrum(std::span<const Complex> series, double dt);
/// Real input: only the non-negative half of the spectrum.
std::vector<SpectrumPoint> dft_spectrum(std::span<const double> series, double dt);

}  // namespace qdm
