#pragma once

#include "qdm/model.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qdm {

/// Level index per dot (0-based, 0 = highest energy).
using DotVector = std::vector<int>;
/// Photon number per mode.
using PhotonVector = std::vector<int>;

struct BasisLabel {
  DotVector levels;
  PhotonVector photons;

  auto operator<=>(const BasisLabel&) const = default;
};

/// Canonical text form with 1-based levels, e.g. "A11_F20" for levels
/// [0 0] and photons [2 0]. Entries are separated by '.' when any of them
/// needs more than one digit ("A1.12_F3.10").
std::string format_label(const BasisLabel& label);
BasisLabel parse_label(std::string_view text);

/// Ordered, duplicate-free list of basis labels.
///
/// Order used by build_basis: dot vectors lexicographic ascending (outer),
/// then photon vectors by total photon number and lexicographically within
/// a total (inner).
class BasisSet {
 public:
  BasisSet() = default;
  explicit BasisSet(std::vector<BasisLabel> labels);

  [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
  [[nodiscard]] bool empty() const noexcept { return labels_.empty(); }
  [[nodiscard]] const BasisLabel& operator[](std::size_t i) const { return labels_[i]; }
  [[nodiscard]] const std::vector<BasisLabel>& labels() const noexcept { return labels_; }
  [[nodiscard]] std::optional<std::size_t> find(const BasisLabel& label) const;
  /// Throws std::out_of_range when absent.
  [[nodiscard]] std::size_t index_of(const BasisLabel& label) const;

  bool operator==(const BasisSet& other) const { return labels_ == other.labels_; }

 private:
  std::vector<BasisLabel> labels_;
  std::map<BasisLabel, std::size_t> index_;
};

/// JSON debug dump: [{"index": i, "label": "A11_F00", "levels": [...], "photons": [...]}, ...]
std::string basis_to_json(const BasisSet& basis);

/// All N = prod(B_n) dot vectors in lexicographic order.
std::vector<DotVector> enumerate_dot_vectors(const std::vector<int>& level_counts);
std::vector<DotVector> enumerate_dot_vectors(const ValidatedConfig& config);

/// All photon vectors with total photon number <= cap, ordered by total then
/// lexicographically.
std::vector<PhotonVector> enumerate_photon_vectors(int modes, int cap);

enum class Order { precedes, succeeds, equal, incomparable };

/// Result of comparing two dot vectors. For comparable pairs `dot` is the
/// differing position and (min_level, max_level) the two level indices at it.
struct Precedence {
  Order order = Order::incomparable;
  int dot = -1;
  int min_level = -1;
  int max_level = -1;
};

/// a precedes b iff they differ in exactly one position n and a[n] < b[n].
Precedence precedes(const DotVector& a, const DotVector& b);

/// Lambda_{x,y} = -(Omega - omega_{r s}) for x preceding y, where the pair
/// differs at dot n with levels r < s. Requires a single-mode config.
double lambda_exponent(const ValidatedConfig& config, const DotVector& x, const DotVector& y);

/// Photon-ladder offsets: sigma_1 = 0 and sigma_i = sigma_j + 1 for every
/// unit-step pair A_i succeeding A_j. Throws std::logic_error if the
/// propagated offsets are inconsistent.
std::vector<int> ladder_offsets(const std::vector<DotVector>& dots);

/// Phase exponents: theta_1 = 0 and theta_j = theta_i + Lambda_{i,j} for
/// every unit-step pair A_i preceding A_j. Path independence is checked to
/// 1e-12 relative; violation throws std::logic_error.
std::vector<double> phase_exponents(const ValidatedConfig& config, const std::vector<DotVector>& dots);

struct LadderData {
  std::vector<DotVector> dots;
  std::vector<int> sigma;
  std::vector<double> theta;
  /// Lambda_{x,y} for every comparable pair x preceding y (indices into dots).
  std::map<std::pair<std::size_t, std::size_t>, double> lambda;
};

LadderData build_ladder(const ValidatedConfig& config);

/// Number of unit excitations: photons plus, per dot, the steps of its level
/// above the lowest one. Conserved by rotating-wave dynamics between
/// adjacent levels.
int excitation_number(const ValidatedConfig& config, const BasisLabel& label);

/// Truncated product basis: every (A, F) with total photons <= cap, limited
/// to the configured excitation shell if one is set. Throws ConfigError if
/// an initial-state label falls outside the basis.
BasisSet build_basis(const ValidatedConfig& config);

}  // namespace qdm
