#include "fixtures.hpp"

#include "qdm/rabi.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <optional>
#include <random>

using namespace qdm;
using namespace qdm::testing;

namespace {

std::optional<CouplingTerm> find_term(const Compiled& c, const BasisLabel& target, const BasisLabel& source) {
  const auto t = c.basis.index_of(target);
  const auto s = c.basis.index_of(source);
  for (const auto& term : c.system.terms)
    if (term.target == t && term.source == s) return term;
  return std::nullopt;
}

std::size_t terms_for(const Compiled& c, const BasisLabel& target) {
  const auto t = c.basis.index_of(target);
  std::size_t n = 0;
  for (const auto& term : c.system.terms) n += term.target == t ? 1 : 0;
  return n;
}

void expect_term(const Compiled& c, const BasisLabel& target, const BasisLabel& source, Complex coeff, double chi) {
  const auto term = find_term(c, target, source);
  ASSERT_TRUE(term.has_value()) << format_label(target) << " <- " << format_label(source);
  EXPECT_NEAR(std::abs(term->coeff - coeff), 0.0, 1e-12 * std::abs(coeff)) << format_label(target) << " <- " << format_label(source);
  EXPECT_NEAR(term->chi, chi, 1e-12 * std::max(1.0, std::abs(chi))) << format_label(target) << " <- " << format_label(source);
}

double max_oracle_error(const Compiled& c, std::mt19937_64& rng, int samples) {
  std::uniform_real_distribution<double> time(0.0, 10.0);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = time(rng);
    const auto phi = random_state(rng, c.basis.size());
    const auto got = rhs(c.system, t, phi);
    const Eigen::MatrixXcd h = image_hamiltonian_matrix(c.config, c.basis, t, c.system.rwa);
    const Eigen::VectorXcd expected =
        Complex{0.0, -1.0} * (h * Eigen::Map<const Eigen::VectorXcd>(phi.data(), static_cast<Eigen::Index>(phi.size())));
    for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::abs(got[i] - expected(static_cast<Eigen::Index>(i))));
  }
  return worst;
}

}  // namespace

TEST(BuildRabiSystem, SingleModeTwoDotEquations) {
  const SingleModeParams p;
  const auto c = compile(single_mode_config(p));
  const double d1 = p.mode - p.omega1;
  const double d2 = p.mode - p.omega2;
  const double upsilon = p.omega1 - p.omega2;
  for (int f = 0; f <= 2; ++f) {
    auto L = [](int r1, int r2, int photons) { return BasisLabel{{r1, r2}, {photons}}; };
    const double s0 = std::sqrt(static_cast<double>(f));
    const double s1 = std::sqrt(f + 1.0);
    expect_term(c, L(0, 0, f), L(0, 1, f + 1), p.p1 * s1, -d2);
    expect_term(c, L(0, 0, f), L(1, 0, f + 1), p.p1 * s1, -d1);
    EXPECT_EQ(terms_for(c, L(0, 0, f)), 2u);

    expect_term(c, L(0, 1, f + 1), L(1, 1, f + 2), p.p1 * std::sqrt(f + 2.0), -d1);
    expect_term(c, L(0, 1, f + 1), L(0, 0, f), p.p1 * s1, d2);
    expect_term(c, L(0, 1, f + 1), L(1, 0, f + 1), p.p2, upsilon);
    expect_term(c, L(1, 0, f + 1), L(0, 1, f + 1), p.p2, -upsilon);
    expect_term(c, L(1, 0, f + 1), L(0, 0, f), p.p1 * s1, d1);
    if (f > 0) {
      expect_term(c, L(1, 1, f), L(0, 1, f - 1), p.p1 * s0, d1);
      expect_term(c, L(1, 1, f), L(1, 0, f - 1), p.p1 * s0, d2);
    }
  }
  EXPECT_EQ(terms_for(c, BasisLabel{{1, 1}, {0}}), 0u);
}

TEST(BuildRabiSystem, ZeroCouplingsGiveNoTerms) {
  auto cfg = single_mode_config({});
  cfg.couplings = {};
  const auto c = compile(cfg);
  EXPECT_TRUE(c.system.terms.empty());
  const auto phi = std::vector<Complex>(c.basis.size(), Complex{0.3, 0.1});
  for (const auto& z : rhs(c.system, 1e-13, phi)) EXPECT_EQ(z, Complex{});
}

TEST(BuildRabiSystem, TwoModeEquationsFollowTheLadder) {
  // The generated equations for the two-dot, two-mode example, with g[dot][mode].
  const auto c = compile(dipole_config(4));
  const auto& cfg = c.config;
  const double g11 = cfg.couplings().g_at(0, 0, 1, 0).real();
  const double g12 = cfg.couplings().g_at(0, 0, 1, 1).real();
  const double g21 = cfg.couplings().g_at(1, 0, 1, 0).real();
  const double g22 = cfg.couplings().g_at(1, 0, 1, 1).real();
  const double w1 = transition_frequency(cfg, 0, 0, 1);
  const double w2 = transition_frequency(cfg, 1, 0, 1);
  const double O1 = cfg.mode_frequency(0);
  const double O2 = cfg.mode_frequency(1);
  const double d11 = O1 - w1, d12 = O2 - w1, d21 = O1 - w2, d22 = O2 - w2;
  const int n1 = 1, n2 = 1;
  auto s = [](int n) { return std::sqrt(static_cast<double>(n)); };

  expect_term(c, label_a(n1, n2), label_c(n1 + 1, n2), g11 * s(n1 + 1), -d11);
  expect_term(c, label_a(n1, n2), label_b(n1 + 1, n2), g21 * s(n1 + 1), -d21);
  expect_term(c, label_a(n1, n2), label_c(n1, n2 + 1), g12 * s(n2 + 1), -d12);
  expect_term(c, label_a(n1, n2), label_b(n1, n2 + 1), g22 * s(n2 + 1), -d22);
  EXPECT_EQ(terms_for(c, label_a(n1, n2)), 4u);

  // C couples to A through the first dot with sqrt(n) factors of the lost photon.
  expect_term(c, label_c(n1, n2), label_d(n1 + 1, n2), g21 * s(n1 + 1), -d21);
  expect_term(c, label_c(n1, n2), label_a(n1 - 1, n2), g11 * s(n1), d11);
  expect_term(c, label_c(n1, n2), label_d(n1, n2 + 1), g22 * s(n2 + 1), -d22);
  expect_term(c, label_c(n1, n2), label_a(n1, n2 - 1), g12 * s(n2), d12);
  EXPECT_EQ(terms_for(c, label_c(n1, n2)), 5u);

  expect_term(c, label_d(n1, n2), label_c(n1 - 1, n2), g21 * s(n1), d21);
  expect_term(c, label_d(n1, n2), label_b(n1 - 1, n2), g11 * s(n1), d11);
  expect_term(c, label_d(n1, n2), label_c(n1, n2 - 1), g22 * s(n2), d22);
  expect_term(c, label_d(n1, n2), label_b(n1, n2 - 1), g12 * s(n2), d12);
  EXPECT_EQ(terms_for(c, label_d(n1, n2)), 4u);

  const Complex p = cfg.couplings().eta_at(0, 0, 1) * std::conj(cfg.couplings().eta_at(1, 0, 1));
  expect_term(c, label_b(n1, n2), label_c(n1, n2), p, w1 - w2);
  expect_term(c, label_c(n1, n2), label_b(n1, n2), std::conj(p), w1 - w2);
}

TEST(BuildRabiSystem, WithoutRwaCounterRotatingTermsAppear) {
  auto cfg = dipole_config(3);
  cfg.rwa = false;
  const auto c = compile(cfg);
  // Both dots up and one more photon: counter-rotating absorption partner.
  EXPECT_TRUE(find_term(c, label_c(1, 0), label_a(0, 0)).has_value());
  EXPECT_TRUE(find_term(c, label_a(1, 0), label_c(0, 0)).has_value());  // dot raised, photon created
  EXPECT_TRUE(find_term(c, label_a(0, 0), label_d(0, 0)).has_value());  // both dots lowered together
  EXPECT_TRUE(find_term(c, label_d(0, 0), label_a(0, 0)).has_value());
  const auto rwa = compile(dipole_config(3));
  EXPECT_FALSE(find_term(rwa, label_a(0, 0), label_d(0, 0)).has_value());
  EXPECT_FALSE(find_term(rwa, label_a(1, 0), label_c(0, 0)).has_value());
  EXPECT_GT(c.system.terms.size(), rwa.system.terms.size());
}

TEST(BuildRabiSystem, TruncationIsCounted) {
  const auto c = compile(jcm_config(1.0, 1.0, 0.3, 1));  // cap 2
  // Excited with 2 photons would need 3 photons below.
  EXPECT_EQ(c.system.dropped_terms, 1u);
  ASSERT_EQ(c.system.boundary_states.size(), 1u);
  EXPECT_EQ(c.basis[c.system.boundary_states[0]], (BasisLabel{{0}, {2}}));
}

TEST(Rhs, FirstEquationMirrorTermsAtTimeZero) {
  const SingleModeParams p;
  const auto c = compile(single_mode_config(p));
  for (int f = 0; f <= 2; ++f) {
    std::vector<Complex> phi(c.basis.size());
    phi[c.basis.index_of(BasisLabel{{0, 0}, {f}})] = 1.0;
    const auto out = rhs(c.system, 0.0, phi);
    const Complex expected{0.0, -p.p1 * std::sqrt(f + 1.0)};
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto& l = c.basis[i];
      const bool partner = l.photons[0] == f + 1 && (l.levels == DotVector{0, 1} || l.levels == DotVector{1, 0});
      if (partner) EXPECT_NEAR(std::abs(out[i] - expected), 0.0, 1e-12 * std::abs(expected));
      else EXPECT_EQ(out[i], Complex{}) << format_label(l);
    }
  }
}

TEST(Rhs, DimensionMismatchThrows) {
  const auto c = compile(jcm_config(1.0, 1.0, 0.3, 1));
  std::vector<Complex> phi(c.basis.size() + 1);
  EXPECT_THROW((void)rhs(c.system, 0.0, phi), std::invalid_argument);
}

TEST(Rhs, MatchesImageHamiltonianOnSample) {
  std::mt19937_64 rng(21);
  for (bool rwa : {true, false}) {
    for (const auto& counts : std::vector<std::vector<int>>{{2}, {3}, {2, 3}, {3, 3}}) {
      for (int modes = 1; modes <= 2; ++modes) {
        const auto c = compile(random_config(rng, counts, modes, 2, rwa));
        EXPECT_LT(max_oracle_error(c, rng, 5), 1e-10);
      }
    }
  }
}

TEST(ImageHamiltonian, ZeroCouplingsAndHermitian) {
  std::mt19937_64 rng(4);
  auto zero = random_config(rng, {2, 3}, 2, 2, false);
  zero.couplings = {};
  const auto z = compile(zero);
  EXPECT_EQ(image_hamiltonian_matrix(z.config, z.basis, 0.0, false).norm(), 0.0);

  for (bool rwa : {true, false}) {
    const auto c = compile(random_config(rng, {3, 2}, 2, 3, rwa));
    for (double t : {0.0, 0.37, 4.2, 9.9}) {
      const Eigen::MatrixXcd h = image_hamiltonian_matrix(c.config, c.basis, t, rwa);
      EXPECT_LT((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(ImageHamiltonian, TextbookJaynesCummingsBlocks) {
  const double g = 0.25;
  auto cfg = jcm_config(1.5, 1.5, g, 3);
  cfg.excitation_cap = 4;
  const auto c = compile(cfg);
  const Eigen::MatrixXcd h = image_hamiltonian_matrix(c.config, c.basis, 0.8, true);
  for (std::size_t i = 0; i < c.basis.size(); ++i) {
    for (std::size_t j = 0; j < c.basis.size(); ++j) {
      const auto& a = c.basis[i];
      const auto& b = c.basis[j];
      // <e, f| H |g, f+1> = g sqrt(f+1), phase free on resonance
      double expected = 0.0;
      if (a.levels[0] == 0 && b.levels[0] == 1 && b.photons[0] == a.photons[0] + 1) expected = g * std::sqrt(b.photons[0]);
      if (a.levels[0] == 1 && b.levels[0] == 0 && a.photons[0] == b.photons[0] + 1) expected = g * std::sqrt(a.photons[0]);
      EXPECT_NEAR(std::abs(h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - expected), 0.0, 1e-14);
    }
  }
}

TEST(ImageHamiltonian, SizeGuard) {
  const auto c = compile(dipole_config(3));
  EXPECT_THROW((void)image_hamiltonian_matrix(c.config, c.basis, 0.0, true, 10), std::length_error);
}

TEST(HermitianPairing, HoldsForGeneratedSystems) {
  std::mt19937_64 rng(9);
  for (bool rwa : {true, false})
    for (const auto& counts : std::vector<std::vector<int>>{{2}, {3}, {2, 2}, {3, 2}, {2, 2, 2}})
      for (int modes = 1; modes <= 2; ++modes)
        for (int cap = 0; cap <= 3; ++cap) EXPECT_TRUE(has_hermitian_pairing(compile(random_config(rng, counts, modes, cap, rwa)).system));
  EXPECT_TRUE(has_hermitian_pairing(compile(dipole_config(3)).system));
}

TEST(HermitianPairing, DetectsBrokenPartner) {
  auto c = compile(single_mode_config({}));
  ASSERT_FALSE(c.system.terms.empty());
  c.system.terms.front().coeff *= 1.5;
  EXPECT_FALSE(has_hermitian_pairing(c.system));
}

TEST(Dependencies, TwoPhotonShellDirectSets) {
  const auto c = compile(dipole_config(3));
  using Set = std::set<BasisLabel>;
  EXPECT_EQ(direct_dependencies(c.system, label_d(1, 1)), (Set{label_c(1, 0), label_c(0, 1), label_b(1, 0), label_b(0, 1)}));
  EXPECT_EQ(direct_dependencies(c.system, label_c(1, 0)), (Set{label_a(0, 0), label_d(2, 0), label_d(1, 1), label_b(1, 0)}));
  EXPECT_EQ(direct_dependencies(c.system, label_d(2, 0)), (Set{label_b(1, 0), label_c(1, 0)}));
  EXPECT_EQ(direct_dependencies(c.system, label_a(0, 0)), (Set{label_c(1, 0), label_c(0, 1), label_b(1, 0), label_b(0, 1)}));
}

TEST(Dependencies, ClosureSizeIsFourTimesPhotonSum) {
  const auto c = compile(dipole_config(4));
  for (int n = 1; n <= 4; ++n)
    for (int n1 = 0; n1 <= n; ++n1) EXPECT_EQ(dependency_closure(c.system, label_d(n1, n - n1)).size(), 4u * static_cast<std::size_t>(n));
}

TEST(Dependencies, UnknownTargetThrows) {
  const auto c = compile(dipole_config(1));
  EXPECT_THROW((void)dependency_closure(c.system, label_d(5, 0)), std::out_of_range);
  EXPECT_THROW((void)direct_dependencies(c.system, label_d(5, 0)), std::out_of_range);
}

TEST(RestrictSystem, KeepsInternalTermsAndCountsCut) {
  const auto full = compile(dipole_config(3));
  const auto keep = dependency_closure(full.system, label_d(1, 1));
  const auto sub = restrict_system(full.system, keep);
  EXPECT_EQ(sub.basis.size(), 8u);
  EXPECT_TRUE(has_hermitian_pairing(sub));
  // The closure is closed under the dynamics, so nothing is cut.
  EXPECT_EQ(sub.dropped_terms, full.system.dropped_terms);
  std::set<BasisLabel> partial{label_a(0, 0), label_b(1, 0)};
  const auto cut = restrict_system(full.system, partial);
  EXPECT_GT(cut.dropped_terms, full.system.dropped_terms);
  EXPECT_EQ(cut.boundary_states.size(), 2u);
}

TEST(RabiJson, ExportsTerms) {
  const auto c = compile(single_mode_config({}));
  const auto j = nlohmann::json::parse(rabi_system_to_json(c.system));
  EXPECT_TRUE(j["rwa"].get<bool>());
  EXPECT_EQ(j["terms"].size(), c.system.terms.size());
  EXPECT_EQ(j["basis"].size(), c.basis.size());
  const auto& t0 = j["terms"][0];
  EXPECT_EQ(t0["target"].get<std::size_t>(), c.system.terms[0].target);
  EXPECT_DOUBLE_EQ(t0["coeff_re"].get<double>(), c.system.terms[0].coeff.real());
  EXPECT_DOUBLE_EQ(t0["chi"].get<double>(), c.system.terms[0].chi);
}
