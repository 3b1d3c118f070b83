#pragma once

#include "qdm/basis.hpp"
#include "qdm/rabi.hpp"
#include "qdm/trajectory.hpp"

#include <Eigen/Dense>

#include <span>
#include <stdexcept>
#include <vector>

namespace qdm {

/// Raised when the single-mode analytic construction does not apply
/// (multi-mode field, no rotating-wave approximation, truncated ladder,
/// couplings that leave the ladder block).
class AnalyticScopeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Constant-coefficient generator of i dPsi/dt = Xi Psi for one ladder block.
///
/// Block state i is Theta_i = Phi(A_i, f + sigma_i) and Psi_i = exp(i theta_i t) Theta_i.
/// Off-diagonal entries are the photon-number dependent couplings of the
/// block, the diagonal is -theta_i.
struct XiMatrix {
  Eigen::MatrixXcd xi;
  int base_photons = 0;
  LadderData ladder;
  /// Basis index of each block state, in dot-vector order.
  std::vector<std::size_t> block;
};

XiMatrix build_xi(const RabiSystem& system, int base_photons);

/// Psi(t) = exp(-i Xi t) Psi(0) through a Hermitian eigendecomposition.
/// The returned trajectory is in Psi coordinates (block order, no labels).
/// Throws std::invalid_argument if psi0 is not normalized and
/// `auto_normalize` is false.
Trajectory propagate(const XiMatrix& xi, std::span<const Complex> psi0, std::span<const double> times,
                     bool auto_normalize = false);

/// Phi(A_i, f + sigma_i)(t) = exp(-i theta_i t) Psi_i(t).
Trajectory map_back(const Trajectory& psi, const LadderData& ladder);

/// Psi(0) for a block from a full-basis amplitude vector.
AmplitudeVector block_amplitudes(const XiMatrix& xi, std::span<const Complex> phi);

/// Full single-mode solution: every complete ladder block carrying initial
/// amplitude is propagated independently; all other amplitudes stay zero.
/// Throws AnalyticScopeError if phi0 has weight on a state that does not
/// belong to a complete block inside the truncated basis.
Trajectory solve_single_mode(const RabiSystem& system, std::span<const Complex> phi0, std::span<const double> times);

}  // namespace qdm
