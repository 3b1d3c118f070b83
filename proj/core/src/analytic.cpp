#include "qdm/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qdm {

XiMatrix build_xi(const RabiSystem& system, int base_photons) {
  const auto& cfg = system.config;
  if (cfg.mode_count() != 1) throw AnalyticScopeError("analytic solution requires a single-mode field");
  if (!system.rwa) throw AnalyticScopeError("analytic solution requires the rotating-wave approximation");
  if (base_photons < 0) throw AnalyticScopeError("base photon number must be non-negative");

  XiMatrix out;
  out.base_photons = base_photons;
  out.ladder = build_ladder(cfg);
  const auto& ladder = out.ladder;
  const std::size_t n = ladder.dots.size();

  std::map<std::size_t, std::size_t> position;
  for (std::size_t i = 0; i < n; ++i) {
    const BasisLabel label{ladder.dots[i], {base_photons + ladder.sigma[i]}};
    auto idx = system.basis.find(label);
    if (!idx) {
      throw AnalyticScopeError("ladder block with base photon number " + std::to_string(base_photons) +
                               " exceeds the truncated basis at " + format_label(label));
    }
    out.block.push_back(*idx);
    position.emplace(*idx, i);
  }
  for (auto b : system.boundary_states) {
    if (position.contains(b)) throw AnalyticScopeError("truncation cuts couplings of ladder state " +
                                                       format_label(system.basis[b]));
  }

  out.xi = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& term : system.terms) {
    auto t = position.find(term.target);
    if (t == position.end()) continue;
    auto s = position.find(term.source);
    if (s == position.end()) {
      throw AnalyticScopeError("coupling " + format_label(system.basis[term.target]) + " <- " +
                               format_label(system.basis[term.source]) + " leaves the photon ladder");
    }
    const std::size_t i = t->second;
    const std::size_t j = s->second;
    // The phase of every block coupling must be theta_j - theta_i.
    const double expected = ladder.theta[j] - ladder.theta[i];
    const double scale = std::max({1.0, std::abs(term.chi), std::abs(ladder.theta[i]) + std::abs(ladder.theta[j])});
    if (std::abs(term.chi - expected) > 1e-9 * scale) {
      throw std::logic_error("build_xi: coupling phase disagrees with the ladder phase exponents");
    }
    out.xi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += term.coeff;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.xi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) -= ladder.theta[i];
  }
  return out;
}

Trajectory propagate(const XiMatrix& xi, std::span<const Complex> psi0, std::span<const double> times,
                     bool auto_normalize) {
  const auto n = xi.xi.rows();
  if (static_cast<Eigen::Index>(psi0.size()) != n) throw std::invalid_argument("propagate: dimension mismatch");
  Eigen::VectorXcd psi = Eigen::Map<const Eigen::VectorXcd>(psi0.data(), n);
  const double p = psi.squaredNorm();
  if (std::abs(p - 1.0) > 1e-9) {
    if (!auto_normalize || p == 0.0) throw std::invalid_argument("propagate: initial state is not normalized");
    psi /= std::sqrt(p);
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(xi.xi);
  if (eig.info() != Eigen::Success) throw std::runtime_error("propagate: eigendecomposition failed");
  const Eigen::MatrixXcd& v = eig.eigenvectors();
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const Eigen::VectorXcd coeff = v.adjoint() * psi;

  Trajectory out;
  out.times.assign(times.begin(), times.end());
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (k > 0 && !(times[k] > times[k - 1])) throw std::invalid_argument("propagate: times must increase");
    Eigen::VectorXcd rotated(n);
    for (Eigen::Index e = 0; e < n; ++e) rotated(e) = coeff(e) * std::polar(1.0, -lambda(e) * times[k]);
    const Eigen::VectorXcd state = v * rotated;
    out.states.emplace_back(state.data(), state.data() + n);
    const double drift = std::abs(1.0 - state.squaredNorm());
    out.norm_drift.push_back(drift);
    out.max_norm_drift = std::max(out.max_norm_drift, drift);
  }
  return out;
}

Trajectory map_back(const Trajectory& psi, const LadderData& ladder) {
  Trajectory out = psi;
  for (std::size_t k = 0; k < out.states.size(); ++k) {
    auto& state = out.states[k];
    if (state.size() != ladder.theta.size()) throw std::invalid_argument("map_back: dimension mismatch");
    for (std::size_t i = 0; i < state.size(); ++i) state[i] *= std::polar(1.0, -ladder.theta[i] * out.times[k]);
  }
  return out;
}

AmplitudeVector block_amplitudes(const XiMatrix& xi, std::span<const Complex> phi) {
  AmplitudeVector psi;
  psi.reserve(xi.block.size());
  for (auto idx : xi.block) psi.push_back(phi[idx]);
  return psi;
}

Trajectory solve_single_mode(const RabiSystem& system, std::span<const Complex> phi0, std::span<const double> times) {
  if (phi0.size() != system.basis.size()) throw std::invalid_argument("solve_single_mode: dimension mismatch");
  if (std::abs(norm(phi0) - 1.0) > 1e-9) throw std::invalid_argument("solve_single_mode: initial state is not normalized");

  Trajectory out;
  out.labels = system.basis.labels();
  out.times.assign(times.begin(), times.end());
  out.states.assign(times.size(), AmplitudeVector(system.basis.size()));

  std::vector<bool> covered(system.basis.size(), false);
  const int cap = system.config.excitation_cap();
  for (int f = 0; f <= cap; ++f) {
    XiMatrix xi;
    try {
      xi = build_xi(system, f);
    } catch (const AnalyticScopeError&) {
      continue;  // block not complete inside the basis
    }
    const AmplitudeVector psi0 = block_amplitudes(xi, phi0);
    const double weight = norm(psi0);
    for (auto idx : xi.block) covered[idx] = true;
    if (weight == 0.0) continue;
    // Each block evolves unitarily on its own; scale back after unit-norm propagation.
    AmplitudeVector unit = psi0;
    for (auto& z : unit) z /= std::sqrt(weight);
    const Trajectory block = map_back(propagate(xi, unit, times), xi.ladder);
    for (std::size_t k = 0; k < times.size(); ++k)
      for (std::size_t i = 0; i < xi.block.size(); ++i)
        out.states[k][xi.block[i]] = block.states[k][i] * std::sqrt(weight);
  }
  for (std::size_t i = 0; i < system.basis.size(); ++i) {
    if (!covered[i] && phi0[i] != Complex{}) {
      throw AnalyticScopeError("initial amplitude on " + format_label(system.basis[i]) +
                               " is outside every complete photon-ladder block");
    }
  }
  for (const auto& state : out.states) {
    const double drift = std::abs(1.0 - norm(state));
    out.norm_drift.push_back(drift);
    out.max_norm_drift = std::max(out.max_norm_drift, drift);
  }
  return out;
}

}  // namespace qdm
