#include "qdm/rabi.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qdm {

namespace {

class TermEmitter {
 public:
  TermEmitter(const BasisSet& basis, std::size_t target, std::vector<CouplingTerm>& terms,
              std::size_t& dropped, bool& touched_boundary)
      : basis_(basis), target_(target), terms_(terms), dropped_(dropped), touched_boundary_(touched_boundary) {}

  void emit(const DotVector& levels, const PhotonVector& photons, Complex coeff, double chi) {
    if (coeff == Complex{}) return;
    auto source = basis_.find(BasisLabel{levels, photons});
    if (!source) {
      ++dropped_;
      touched_boundary_ = true;
      return;
    }
    terms_.push_back(CouplingTerm{target_, *source, coeff, chi});
  }

 private:
  const BasisSet& basis_;
  std::size_t target_;
  std::vector<CouplingTerm>& terms_;
  std::size_t& dropped_;
  bool& touched_boundary_;
};

// Sigma1 and Sigma2: one dot changes level, one mode gains or loses a photon.
void emit_field_terms(const ValidatedConfig& cfg, const BasisLabel& label, bool rwa, TermEmitter& out) {
  const auto& c = cfg.couplings();
  const int dots = cfg.dot_count();
  const int modes = cfg.mode_count();
  for (int n = 0; n < dots; ++n) {
    const int r = label.levels[n];
    const int levels = cfg.level_count(n);
    DotVector moved = label.levels;

    // Sigma1: source has dot n at j > r, reached through gamma_{n r j} sigma_{r j}.
    for (int j = r + 1; j < levels; ++j) {
      const Complex gamma = c.gamma_at(n, r, j);
      if (gamma == Complex{}) continue;
      const double omega_rj = cfg.level_energy(n, r) - cfg.level_energy(n, j);
      moved[n] = j;
      for (int v = 0; v < modes; ++v) {
        const Complex g = c.g_at(n, r, j, v);
        const double big_omega = cfg.mode_frequency(v);
        PhotonVector photons = label.photons;
        const int f = photons[v];
        photons[v] = f + 1;
        out.emit(moved, photons, gamma * g * std::sqrt(f + 1.0), omega_rj - big_omega);
        if (!rwa && f > 0) {
          photons[v] = f - 1;
          out.emit(moved, photons, gamma * std::conj(g) * std::sqrt(static_cast<double>(f)),
                   omega_rj + big_omega);
        }
      }
    }

    // Sigma2: source has dot n at i < r, reached through conj(gamma_{n i r}) sigma_{r i}.
    for (int i = 0; i < r; ++i) {
      const Complex gamma_c = std::conj(c.gamma_at(n, i, r));
      if (gamma_c == Complex{}) continue;
      const double omega_ri = cfg.level_energy(n, r) - cfg.level_energy(n, i);
      moved[n] = i;
      for (int v = 0; v < modes; ++v) {
        const Complex g = c.g_at(n, i, r, v);
        const double big_omega = cfg.mode_frequency(v);
        PhotonVector photons = label.photons;
        const int f = photons[v];
        if (!rwa) {
          photons[v] = f + 1;
          out.emit(moved, photons, gamma_c * g * std::sqrt(f + 1.0), omega_ri - big_omega);
        }
        if (f > 0) {
          photons[v] = f - 1;
          out.emit(moved, photons, gamma_c * std::conj(g) * std::sqrt(static_cast<double>(f)),
                   omega_ri + big_omega);
        }
      }
    }
  }
}

// Sigma3..Sigma6: two dots n < m change level simultaneously, photons fixed.
void emit_dipole_terms(const ValidatedConfig& cfg, const BasisLabel& label, bool rwa, TermEmitter& out) {
  const auto& c = cfg.couplings();
  const int dots = cfg.dot_count();
  for (int n = 0; n < dots; ++n) {
    for (int m = n + 1; m < dots; ++m) {
      const int r = label.levels[n];
      const int s = label.levels[m];
      const int levels_n = cfg.level_count(n);
      const int levels_m = cfg.level_count(m);
      DotVector moved = label.levels;

      auto omega = [&](int dot, int a, int b) { return cfg.level_energy(dot, a) - cfg.level_energy(dot, b); };

      for (int a = 0; a < levels_n; ++a) {
        if (a == r) continue;
        // a > r: eta_{n r a} sigma_{r a}; a < r: conj(eta_{n a r}) sigma_{r a}
        const Complex left = a > r ? c.eta_at(n, r, a) : std::conj(c.eta_at(n, a, r));
        if (left == Complex{}) continue;
        for (int b = 0; b < levels_m; ++b) {
          if (b == s) continue;
          const bool sigma3 = a > r && b > s;
          const bool sigma6 = a < r && b < s;
          if (rwa && (sigma3 || sigma6)) continue;
          const Complex right = b > s ? c.eta_at(m, s, b) : std::conj(c.eta_at(m, b, s));
          moved[n] = a;
          moved[m] = b;
          out.emit(moved, label.photons, left * right, omega(n, r, a) + omega(m, s, b));
        }
      }
    }
  }
}

}  // namespace

RabiSystem build_rabi_system(const ValidatedConfig& config, const BasisSet& basis) {
  RabiSystem system{config, basis, {}, config.rwa(), 0, {}};
  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    const auto& label = basis[idx];
    if (label.levels.size() != static_cast<std::size_t>(config.dot_count()) ||
        label.photons.size() != static_cast<std::size_t>(config.mode_count())) {
      throw std::invalid_argument("build_rabi_system: basis does not match the configuration");
    }
    bool boundary = false;
    TermEmitter emitter(basis, idx, system.terms, system.dropped_terms, boundary);
    emit_field_terms(config, label, system.rwa, emitter);
    emit_dipole_terms(config, label, system.rwa, emitter);
    if (boundary) system.boundary_states.push_back(idx);
  }
  std::sort(system.terms.begin(), system.terms.end(), [](const CouplingTerm& a, const CouplingTerm& b) {
    return a.target != b.target ? a.target < b.target : a.source < b.source;
  });
  for (std::size_t i = 1; i < system.terms.size(); ++i) {
    if (system.terms[i].target == system.terms[i - 1].target &&
        system.terms[i].source == system.terms[i - 1].source) {
      throw std::logic_error("build_rabi_system: duplicate coupling between two basis states");
    }
  }
  return system;
}

void rhs(const RabiSystem& system, double t, std::span<const Complex> phi, std::span<Complex> out) {
  const std::size_t n = system.basis.size();
  if (phi.size() != n || out.size() != n) throw std::invalid_argument("rhs: dimension mismatch");
  std::fill(out.begin(), out.end(), Complex{});
  for (const auto& term : system.terms) {
    out[term.target] += term.coeff * std::polar(1.0, term.chi * t) * phi[term.source];
  }
  const Complex minus_i{0.0, -1.0};
  for (auto& z : out) z *= minus_i;
}

AmplitudeVector rhs(const RabiSystem& system, double t, std::span<const Complex> phi) {
  AmplitudeVector out(system.basis.size());
  rhs(system, t, phi, out);
  return out;
}

bool has_hermitian_pairing(const RabiSystem& system, double rel_tol) {
  for (const auto& term : system.terms) {
    auto it = std::lower_bound(system.terms.begin(), system.terms.end(), term.source,
                               [](const CouplingTerm& t, std::size_t target) { return t.target < target; });
    bool found = false;
    for (; it != system.terms.end() && it->target == term.source; ++it) {
      if (it->source != term.target) continue;
      const double scale = std::max(std::abs(term.coeff), 1e-300);
      const double chi_scale = std::max(std::abs(term.chi), 1.0);
      found = std::abs(it->coeff - std::conj(term.coeff)) <= rel_tol * scale &&
              std::abs(it->chi + term.chi) <= rel_tol * chi_scale;
      break;
    }
    if (!found) return false;
  }
  return true;
}

std::set<BasisLabel> direct_dependencies(const RabiSystem& system, const BasisLabel& target) {
  const auto idx = system.basis.index_of(target);
  std::set<BasisLabel> out;
  for (const auto& term : system.terms) {
    if (term.target == idx) out.insert(system.basis[term.source]);
  }
  return out;
}

std::set<BasisLabel> dependency_closure(const RabiSystem& system, const BasisLabel& target) {
  const auto start = system.basis.index_of(target);
  std::vector<std::vector<std::size_t>> sources(system.basis.size());
  for (const auto& term : system.terms) sources[term.target].push_back(term.source);

  std::vector<bool> seen(system.basis.size(), false);
  std::deque<std::size_t> queue{start};
  std::set<BasisLabel> out;
  while (!queue.empty()) {
    const auto i = queue.front();
    queue.pop_front();
    for (auto s : sources[i]) {
      if (seen[s]) continue;
      seen[s] = true;
      out.insert(system.basis[s]);
      queue.push_back(s);
    }
  }
  return out;
}

RabiSystem restrict_system(const RabiSystem& system, const std::set<BasisLabel>& keep) {
  std::vector<BasisLabel> labels;
  std::vector<std::ptrdiff_t> remap(system.basis.size(), -1);
  for (std::size_t i = 0; i < system.basis.size(); ++i) {
    if (keep.contains(system.basis[i])) {
      remap[i] = static_cast<std::ptrdiff_t>(labels.size());
      labels.push_back(system.basis[i]);
    }
  }
  RabiSystem out{system.config, BasisSet(std::move(labels)), {}, system.rwa, 0, {}};
  std::vector<bool> boundary(out.basis.size(), false);
  for (std::size_t i : system.boundary_states) {
    if (remap[i] >= 0) boundary[static_cast<std::size_t>(remap[i])] = true;
  }
  out.dropped_terms = system.dropped_terms;
  for (const auto& term : system.terms) {
    const auto t = remap[term.target];
    const auto s = remap[term.source];
    if (t < 0) continue;
    if (s < 0) {
      boundary[static_cast<std::size_t>(t)] = true;
      ++out.dropped_terms;
      continue;
    }
    out.terms.push_back(CouplingTerm{static_cast<std::size_t>(t), static_cast<std::size_t>(s), term.coeff, term.chi});
  }
  for (std::size_t i = 0; i < boundary.size(); ++i)
    if (boundary[i]) out.boundary_states.push_back(i);
  return out;
}

std::string rabi_system_to_json(const RabiSystem& system) {
  nlohmann::json basis = nlohmann::json::array();
  for (std::size_t i = 0; i < system.basis.size(); ++i) {
    basis.push_back({{"index", i},
                     {"label", format_label(system.basis[i])},
                     {"levels", system.basis[i].levels},
                     {"photons", system.basis[i].photons}});
  }
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : system.terms) {
    terms.push_back({{"target", t.target},
                     {"source", t.source},
                     {"coeff_re", t.coeff.real()},
                     {"coeff_im", t.coeff.imag()},
                     {"chi", t.chi}});
  }
  nlohmann::json out{{"rwa", system.rwa},
                     {"basis", std::move(basis)},
                     {"terms", std::move(terms)},
                     {"dropped_terms", system.dropped_terms},
                     {"boundary_states", system.boundary_states}};
  return out.dump(2);
}

}  // namespace qdm
