#include "qdm/entangle.hpp"

#include "qdm/rabi.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>
#include <stdexcept>

namespace qdm {

namespace {

Complex lookup(const std::map<PhotonPair, Complex>& m, const PhotonPair& key) {
  auto it = m.find(key);
  return it == m.end() ? Complex{} : it->second;
}

struct Entry {
  Complex a, b, c, d;
};

Trajectory run_shell(const SystemConfig& base, const IntegratorSpec& spec, int n_sum) {
  const ValidatedConfig cfg = validate(shell_config(base, n_sum));
  const BasisSet basis = build_basis(cfg);
  const RabiSystem system = build_rabi_system(cfg, basis);
  return integrate(system, initial_state(system), spec);
}

}  // namespace

double AmplitudeQuadruple::norm() const {
  double s = 0.0;
  for (const auto* m : {&a, &b, &c, &d})
    for (const auto& [key, z] : *m) s += std::norm(z);
  return s;
}

AmplitudeQuadruple quadruple_from_state(const BasisSet& basis, std::span<const Complex> phi) {
  if (phi.size() != basis.size()) throw std::invalid_argument("quadruple_from_state: dimension mismatch");
  AmplitudeQuadruple q;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& label = basis[i];
    if (label.levels.size() != 2 || label.photons.size() != 2) {
      throw std::invalid_argument("quadruple_from_state: expected two dots and two modes");
    }
    const int r1 = label.levels[0];
    const int r2 = label.levels[1];
    if (r1 < 0 || r1 > 1 || r2 < 0 || r2 > 1) {
      throw std::invalid_argument("quadruple_from_state: expected two-level dots");
    }
    auto& target = r1 == 0 ? (r2 == 0 ? q.a : q.b) : (r2 == 0 ? q.c : q.d);
    target[{label.photons[0], label.photons[1]}] += phi[i];
  }
  return q;
}

double concurrence(const AmplitudeQuadruple& q, int n1_max, int n2_max) {
  if (n1_max < 0 || n2_max < 0) throw std::invalid_argument("concurrence: photon bounds must be non-negative");

  // Photon pairs absent from all four maps contribute nothing to any bracket.
  std::set<PhotonPair> keys;
  for (const auto* m : {&q.a, &q.b, &q.c, &q.d})
    for (const auto& [key, z] : *m)
      if (key.first >= 0 && key.first <= n1_max && key.second >= 0 && key.second <= n2_max) keys.insert(key);

  std::vector<Entry> entries;
  entries.reserve(keys.size());
  for (const auto& key : keys) entries.push_back({lookup(q.a, key), lookup(q.b, key), lookup(q.c, key), lookup(q.d, key)});

  // The bracket is symmetric in the two photon indices, so sum p <= q and
  // count off-diagonal pairs twice.
  double sum = 0.0;
  for (std::size_t p = 0; p < entries.size(); ++p) {
    const Entry& x = entries[p];
    sum += std::norm(2.0 * (x.a * x.d - x.b * x.c));
    for (std::size_t r = p + 1; r < entries.size(); ++r) {
      const Entry& y = entries[r];
      sum += 2.0 * std::norm(x.a * y.d - x.b * y.c - y.b * x.c + y.a * x.d);
    }
  }
  return std::sqrt(sum);
}

SystemConfig shell_config(const SystemConfig& base, int n_sum) {
  if (n_sum < 2) throw std::invalid_argument("shell_config: photon shells start at N_sum = 2");
  SystemConfig cfg = base;
  // Both dots up with n_sum photons carries two extra excitations.
  const int excitation = n_sum + 2;
  cfg.initial_state = {InitialAmplitude{{0, 0}, {1, n_sum - 1}, Complex{1.0, 0.0}}};
  cfg.excitation_cap = excitation;
  cfg.excitation_shell = excitation;
  return cfg;
}

ConcurrenceResult concurrence_run(const ConcurrenceParams& params) {
  if (params.n_max < 2) throw std::invalid_argument("concurrence_run: N_max must be at least 2");
  if (params.config.dots.size() != 2 || params.config.modes.size() != 2) {
    throw std::invalid_argument("concurrence_run: requires two dots and two modes");
  }
  params.integrator.check();

  const int shells = params.n_max - 1;
  ConcurrenceResult out;
  out.shells.resize(static_cast<std::size_t>(shells));

  const unsigned jobs = std::max(1u, params.jobs);
  for (int first = 0; first < shells; first += static_cast<int>(jobs)) {
    std::vector<std::future<Trajectory>> pending;
    const int last = std::min(shells, first + static_cast<int>(jobs));
    for (int s = first; s < last; ++s) {
      pending.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run_shell,
                                   std::cref(params.config), std::cref(params.integrator), s + 2));
    }
    for (int s = first; s < last; ++s) out.shells[static_cast<std::size_t>(s)] = pending[static_cast<std::size_t>(s - first)].get();
  }

  for (const auto& traj : out.shells)
    for (const auto& label : traj.labels) {
      out.n1_max = std::max(out.n1_max, label.photons[0]);
      out.n2_max = std::max(out.n2_max, label.photons[1]);
    }

  out.times = out.shells.front().times;
  const double weight = 1.0 / std::sqrt(static_cast<double>(shells));
  std::vector<BasisSet> bases;
  for (const auto& traj : out.shells) bases.emplace_back(traj.labels);
  out.lambda.reserve(out.times.size());
  for (std::size_t k = 0; k < out.times.size(); ++k) {
    AmplitudeQuadruple q;
    for (std::size_t s = 0; s < out.shells.size(); ++s) {
      AmplitudeVector scaled = out.shells[s].states[k];
      for (auto& z : scaled) z *= weight;
      const auto part = quadruple_from_state(bases[s], scaled);
      for (auto [dst, src] : {std::pair{&q.a, &part.a}, {&q.b, &part.b}, {&q.c, &part.c}, {&q.d, &part.d}})
        for (const auto& [key, z] : *src) (*dst)[key] += z;
    }
    out.lambda.push_back(concurrence(q, out.n1_max, out.n2_max));
  }
  return out;
}

}  // namespace qdm
