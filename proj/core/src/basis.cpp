#include "qdm/basis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qdm {

namespace {

std::string join_digits(const std::vector<int>& values, int offset) {
  const bool compact = std::all_of(values.begin(), values.end(),
                                   [offset](int v) { return v + offset >= 0 && v + offset <= 9; });
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!compact && i > 0) out += '.';
    out += std::to_string(values[i] + offset);
  }
  return out;
}

std::vector<int> split_digits(std::string_view text, int offset) {
  std::vector<int> out;
  if (text.empty()) throw std::invalid_argument("empty label component");
  if (text.find('.') == std::string_view::npos) {
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw std::invalid_argument("bad label character");
      out.push_back(ch - '0' - offset);
    }
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('.', start);
    if (end == std::string_view::npos) end = text.size();
    auto part = text.substr(start, end - start);
    if (part.empty()) throw std::invalid_argument("bad label component");
    int v = 0;
    for (char ch : part) {
      if (ch < '0' || ch > '9') throw std::invalid_argument("bad label character");
      v = v * 10 + (ch - '0');
    }
    out.push_back(v - offset);
    start = end + 1;
  }
  return out;
}

void enumerate_recursive(const std::vector<int>& counts, std::size_t pos, DotVector& current,
                         std::vector<DotVector>& out) {
  if (pos == counts.size()) {
    out.push_back(current);
    return;
  }
  for (int level = 0; level < counts[pos]; ++level) {
    current[pos] = level;
    enumerate_recursive(counts, pos + 1, current, out);
  }
}

void photons_with_total(int modes, int total, std::size_t pos, PhotonVector& current,
                        std::vector<PhotonVector>& out) {
  if (pos + 1 == static_cast<std::size_t>(modes)) {
    current[pos] = total;
    out.push_back(current);
    return;
  }
  for (int f = 0; f <= total; ++f) {
    current[pos] = f;
    photons_with_total(modes, total - f, pos + 1, current, out);
  }
}

bool unit_step(const Precedence& p) { return p.max_level - p.min_level == 1; }

}  // namespace

std::string format_label(const BasisLabel& label) {
  return "A" + join_digits(label.levels, 1) + "_F" + join_digits(label.photons, 0);
}

BasisLabel parse_label(std::string_view text) {
  if (text.size() < 4 || text.front() != 'A') throw std::invalid_argument("label must start with 'A'");
  const auto sep = text.find("_F");
  if (sep == std::string_view::npos) throw std::invalid_argument("label must contain '_F'");
  BasisLabel label;
  label.levels = split_digits(text.substr(1, sep - 1), 1);
  label.photons = split_digits(text.substr(sep + 2), 0);
  for (int v : label.levels)
    if (v < 0) throw std::invalid_argument("label levels are 1-based");
  return label;
}

BasisSet::BasisSet(std::vector<BasisLabel> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw std::invalid_argument("duplicate basis label " + format_label(labels_[i]));
    }
  }
}

std::optional<std::size_t> BasisSet::find(const BasisLabel& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t BasisSet::index_of(const BasisLabel& label) const {
  auto idx = find(label);
  if (!idx) throw std::out_of_range("label " + format_label(label) + " not in basis");
  return *idx;
}

std::string basis_to_json(const BasisSet& basis) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out.push_back({{"index", i},
                   {"label", format_label(basis[i])},
                   {"levels", basis[i].levels},
                   {"photons", basis[i].photons}});
  }
  return out.dump(2);
}

std::vector<DotVector> enumerate_dot_vectors(const std::vector<int>& level_counts) {
  std::vector<DotVector> out;
  if (level_counts.empty()) return out;
  DotVector current(level_counts.size(), 0);
  enumerate_recursive(level_counts, 0, current, out);
  return out;
}

std::vector<DotVector> enumerate_dot_vectors(const ValidatedConfig& config) {
  return enumerate_dot_vectors(config.level_counts());
}

std::vector<PhotonVector> enumerate_photon_vectors(int modes, int cap) {
  std::vector<PhotonVector> out;
  if (modes <= 0 || cap < 0) return out;
  PhotonVector current(static_cast<std::size_t>(modes), 0);
  for (int total = 0; total <= cap; ++total) photons_with_total(modes, total, 0, current, out);
  return out;
}

Precedence precedes(const DotVector& a, const DotVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("precedes: dot vectors differ in length");
  Precedence result;
  int differing = 0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (a[n] != b[n]) {
      ++differing;
      result.dot = static_cast<int>(n);
      result.min_level = std::min(a[n], b[n]);
      result.max_level = std::max(a[n], b[n]);
    }
  }
  if (differing == 0) return Precedence{Order::equal};
  if (differing > 1) return Precedence{Order::incomparable};
  result.order = a[result.dot] < b[result.dot] ? Order::precedes : Order::succeeds;
  return result;
}

double lambda_exponent(const ValidatedConfig& config, const DotVector& x, const DotVector& y) {
  if (config.mode_count() != 1) throw std::invalid_argument("lambda_exponent: single-mode configurations only");
  const auto p = precedes(x, y);
  if (p.order != Order::precedes) throw std::invalid_argument("lambda_exponent: x must precede y");
  return -detuning(config, p.dot, p.min_level, p.max_level, 0);
}

std::vector<int> ladder_offsets(const std::vector<DotVector>& dots) {
  std::vector<int> sigma(dots.size(), 0);
  if (dots.empty()) return sigma;
  std::vector<bool> seen(dots.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const auto i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < dots.size(); ++j) {
      if (seen[j]) continue;
      const auto p = precedes(dots[i], dots[j]);
      if (p.order == Order::incomparable || p.order == Order::equal || !unit_step(p)) continue;
      sigma[j] = p.order == Order::precedes ? sigma[i] + 1 : sigma[i] - 1;
      seen[j] = true;
      queue.push_back(j);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw std::invalid_argument("ladder_offsets: dot vectors are not connected by unit level steps");
  }
  for (std::size_t i = 0; i < dots.size(); ++i) {
    for (std::size_t j = 0; j < dots.size(); ++j) {
      const auto p = precedes(dots[i], dots[j]);
      if (p.order == Order::succeeds && unit_step(p) && sigma[i] != sigma[j] + 1) {
        throw std::logic_error("ladder_offsets: inconsistent photon offsets");
      }
    }
  }
  return sigma;
}

std::vector<double> phase_exponents(const ValidatedConfig& config, const std::vector<DotVector>& dots) {
  std::vector<double> theta(dots.size(), 0.0);
  if (dots.empty()) return theta;
  std::vector<bool> seen(dots.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const auto i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < dots.size(); ++j) {
      if (seen[j]) continue;
      const auto p = precedes(dots[i], dots[j]);
      if (p.order == Order::incomparable || p.order == Order::equal || !unit_step(p)) continue;
      theta[j] = p.order == Order::precedes ? theta[i] + lambda_exponent(config, dots[i], dots[j])
                                            : theta[i] - lambda_exponent(config, dots[j], dots[i]);
      seen[j] = true;
      queue.push_back(j);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw std::invalid_argument("phase_exponents: dot vectors are not connected by unit level steps");
  }
  for (std::size_t i = 0; i < dots.size(); ++i) {
    for (std::size_t j = 0; j < dots.size(); ++j) {
      const auto p = precedes(dots[i], dots[j]);
      if (p.order != Order::precedes || !unit_step(p)) continue;
      const double step = lambda_exponent(config, dots[i], dots[j]);
      const double expected = theta[i] + step;
      const double scale = std::max({1.0, std::abs(theta[j]), std::abs(theta[i]) + std::abs(step)});
      if (std::abs(theta[j] - expected) > 1e-12 * scale) {
        throw std::logic_error("phase_exponents: path-dependent phase exponents");
      }
    }
  }
  return theta;
}

LadderData build_ladder(const ValidatedConfig& config) {
  LadderData data;
  data.dots = enumerate_dot_vectors(config);
  data.sigma = ladder_offsets(data.dots);
  data.theta = phase_exponents(config, data.dots);
  for (std::size_t x = 0; x < data.dots.size(); ++x) {
    for (std::size_t y = 0; y < data.dots.size(); ++y) {
      if (precedes(data.dots[x], data.dots[y]).order == Order::precedes) {
        data.lambda[{x, y}] = lambda_exponent(config, data.dots[x], data.dots[y]);
      }
    }
  }
  return data;
}

int excitation_number(const ValidatedConfig& config, const BasisLabel& label) {
  int total = std::accumulate(label.photons.begin(), label.photons.end(), 0);
  for (std::size_t n = 0; n < label.levels.size(); ++n) {
    total += config.level_count(static_cast<int>(n)) - 1 - label.levels[n];
  }
  return total;
}

BasisSet build_basis(const ValidatedConfig& config) {
  const auto dots = enumerate_dot_vectors(config);
  const auto photons = enumerate_photon_vectors(config.mode_count(), config.excitation_cap());
  const auto& shell = config.config().excitation_shell;

  std::vector<BasisLabel> labels;
  labels.reserve(dots.size() * photons.size());
  for (const auto& a : dots) {
    for (const auto& f : photons) {
      BasisLabel label{a, f};
      if (shell && excitation_number(config, label) != *shell) continue;
      labels.push_back(std::move(label));
    }
  }
  BasisSet basis(std::move(labels));

  for (const auto& amp : config.config().initial_state) {
    BasisLabel label{amp.levels, amp.photons};
    if (!basis.find(label)) {
      throw ConfigError("initial state " + format_label(label) +
                        " lies outside the truncated basis (raise excitation_cap or fix the shell)");
    }
  }
  return basis;
}

}  // namespace qdm
