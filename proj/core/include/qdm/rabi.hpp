#pragma once

#include "qdm/basis.hpp"
#include "qdm/model.hpp"
#include "qdm/trajectory.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace qdm {

/// One contribution coeff * exp(i chi t) * Phi[source] to i dPhi[target]/dt.
struct CouplingTerm {
  std::size_t target = 0;
  std::size_t source = 0;
  Complex coeff;
  double chi = 0.0;

  bool operator==(const CouplingTerm&) const = default;
};

/// Compiled interaction-picture equations of motion over a truncated basis.
struct RabiSystem {
  ValidatedConfig config;
  BasisSet basis;
  /// Sorted by (target, source); at most one term per pair.
  std::vector<CouplingTerm> terms;
  bool rwa = true;
  /// Couplings that would leave the truncated basis.
  std::size_t dropped_terms = 0;
  /// Basis indices that lost at least one coupling to truncation.
  std::vector<std::size_t> boundary_states;
};

/// Emits every field (Sigma1, Sigma2) and dipole-dipole (Sigma3..Sigma6)
/// coupling for each basis label. Under the rotating-wave approximation only
/// the rotating field terms (raise + absorb, lower + emit) and the mixed
/// dipole terms Sigma4/Sigma5 are kept.
RabiSystem build_rabi_system(const ValidatedConfig& config, const BasisSet& basis);

/// dPhi/dt = -i * sum coeff exp(i chi t) Phi[source], accumulated per target in
/// term order. `out` must not alias `phi`.
void rhs(const RabiSystem& system, double t, std::span<const Complex> phi, std::span<Complex> out);
AmplitudeVector rhs(const RabiSystem& system, double t, std::span<const Complex> phi);

/// Dense <a| H_int^(I)(t) |b> over the basis, built from the dot transition
/// and ladder operators on the full product space and projected onto the
/// basis. Independent of build_rabi_system; used as its oracle. Throws
/// std::length_error when the product space exceeds `max_states`.
Eigen::MatrixXcd image_hamiltonian_matrix(const ValidatedConfig& config, const BasisSet& basis, double t,
                                          bool rwa, std::size_t max_states = 4096);

/// Hermitian-pairing scan: every (t -> s, c, chi) has a (s -> t, conj(c), -chi).
bool has_hermitian_pairing(const RabiSystem& system, double rel_tol = 1e-12);

/// Labels referenced directly by the target's equation.
std::set<BasisLabel> direct_dependencies(const RabiSystem& system, const BasisLabel& target);

/// Every label the target's equation references transitively (the target
/// itself included when it is reachable, which it always is for a coupled
/// target). Throws std::out_of_range if the target is not in the basis.
std::set<BasisLabel> dependency_closure(const RabiSystem& system, const BasisLabel& target);

/// Restricts a system to a subset of basis indices (terms between retained
/// states only). The new basis keeps the original relative order.
RabiSystem restrict_system(const RabiSystem& system, const std::set<BasisLabel>& keep);

/// {"rwa": ..., "basis": [...], "terms": [{target, source, coeff_re, coeff_im, chi}], ...}
std::string rabi_system_to_json(const RabiSystem& system);

}  // namespace qdm
