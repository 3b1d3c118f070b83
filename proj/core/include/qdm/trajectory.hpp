#pragma once

#include "qdm/basis.hpp"
#include "qdm/model.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace qdm {

using AmplitudeVector = std::vector<Complex>;

/// Sampled amplitudes over time. `labels[k]` names component k of every state.
struct Trajectory {
  std::vector<BasisLabel> labels;
  std::vector<double> times;
  std::vector<AmplitudeVector> states;
  /// |1 - ||Phi(t)||^2| at each output time.
  std::vector<double> norm_drift;
  /// Largest drift seen at any internal step (not only at output times).
  double max_norm_drift = 0.0;
  /// Largest population found on truncation-boundary states.
  double leakage = 0.0;
};

/// Raised when an integration produces non-finite values.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::size_t step) : std::runtime_error(what), step_(step) {}
  [[nodiscard]] std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Squared 2-norm sum |phi_i|^2.
double norm(std::span<const Complex> phi);

}  // namespace qdm
