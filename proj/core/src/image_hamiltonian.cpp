#include "qdm/rabi.hpp"

#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdm {

namespace {

using SpMat = Eigen::SparseMatrix<Complex>;

SpMat identity(int dim) {
  SpMat m(dim, dim);
  m.setIdentity();
  return m;
}

SpMat ket_bra(int dim, int row, int col) {
  SpMat m(dim, dim);
  m.insert(row, col) = Complex{1.0, 0.0};
  return m;
}

SpMat annihilation(int dim) {
  SpMat m(dim, dim);
  for (int f = 1; f < dim; ++f) m.insert(f - 1, f) = std::sqrt(static_cast<double>(f));
  return m;
}

// Product space: dots first, then modes, each factor in natural order.
class ProductSpace {
 public:
  ProductSpace(const ValidatedConfig& cfg, const BasisSet& basis) {
    for (int n = 0; n < cfg.dot_count(); ++n) dims_.push_back(cfg.level_count(n));
    std::vector<int> fmax(static_cast<std::size_t>(cfg.mode_count()), 0);
    for (const auto& label : basis.labels())
      for (std::size_t v = 0; v < fmax.size(); ++v) fmax[v] = std::max(fmax[v], label.photons[v]);
    // One extra rung so a^dagger on the highest retained state stays exact.
    for (int f : fmax) dims_.push_back(f + 2);
    dim_ = 1;
    for (int d : dims_) dim_ *= static_cast<std::size_t>(d);
  }

  [[nodiscard]] std::size_t dim() const { return dim_; }

  [[nodiscard]] SpMat embed(std::size_t factor, const SpMat& local) const {
    SpMat out = identity(1);
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      SpMat next = Eigen::kroneckerProduct(out, k == factor ? local : identity(dims_[k])).eval();
      out = std::move(next);
    }
    return out;
  }

  [[nodiscard]] int factor_dim(std::size_t factor) const { return dims_[factor]; }

  [[nodiscard]] Eigen::Index index_of(const BasisLabel& label) const {
    std::size_t idx = 0;
    std::size_t k = 0;
    for (int level : label.levels) idx = idx * static_cast<std::size_t>(dims_[k++]) + static_cast<std::size_t>(level);
    for (int f : label.photons) idx = idx * static_cast<std::size_t>(dims_[k++]) + static_cast<std::size_t>(f);
    return static_cast<Eigen::Index>(idx);
  }

 private:
  std::vector<int> dims_;
  std::size_t dim_ = 1;
};

}  // namespace

Eigen::MatrixXcd image_hamiltonian_matrix(const ValidatedConfig& cfg, const BasisSet& basis, double t, bool rwa,
                                          std::size_t max_states) {
  const ProductSpace space(cfg, basis);
  if (space.dim() > max_states) {
    throw std::length_error("image_hamiltonian_matrix: product space of " + std::to_string(space.dim()) +
                            " states exceeds the oracle limit");
  }
  const auto dim = static_cast<Eigen::Index>(space.dim());
  const auto& c = cfg.couplings();
  const auto dots = static_cast<std::size_t>(cfg.dot_count());

  // sigma^n_{ab} = |a><b| on dot n; raising when E_a > E_b.
  auto sigma = [&](int n, int a, int b) {
    return space.embed(static_cast<std::size_t>(n), ket_bra(cfg.level_count(n), a, b));
  };
  auto raises = [&](int n, int a, int b) { return cfg.level_energy(n, a) > cfg.level_energy(n, b); };

  SpMat h(dim, dim);

  for (int n = 0; n < cfg.dot_count(); ++n) {
    const int levels = cfg.level_count(n);
    for (int i = 0; i < levels; ++i) {
      for (int j = i + 1; j < levels; ++j) {
        const Complex gamma = c.gamma_at(n, i, j);
        if (gamma == Complex{}) continue;
        const SpMat s_ij = sigma(n, i, j);
        const SpMat s_ji = sigma(n, j, i);
        for (int v = 0; v < cfg.mode_count(); ++v) {
          const Complex g = c.g_at(n, i, j, v);
          if (g == Complex{}) continue;
          const std::size_t factor = dots + static_cast<std::size_t>(v);
          const SpMat a = space.embed(factor, annihilation(space.factor_dim(factor)));
          const SpMat a_dag = SpMat(a.adjoint());
          // (gamma s_ij + conj(gamma) s_ji)(g a + conj(g) a^dagger), term by term.
          struct Piece {
            Complex coeff;
            const SpMat* dot_op;
            const SpMat* field_op;
            bool dot_raises;
            bool absorbs;
          };
          const Piece pieces[] = {
              {gamma * g, &s_ij, &a, raises(n, i, j), true},
              {gamma * std::conj(g), &s_ij, &a_dag, raises(n, i, j), false},
              {std::conj(gamma) * g, &s_ji, &a, raises(n, j, i), true},
              {std::conj(gamma) * std::conj(g), &s_ji, &a_dag, raises(n, j, i), false},
          };
          for (const auto& p : pieces) {
            const bool rotating = p.dot_raises == p.absorbs;
            if (rwa && !rotating) continue;
            h += p.coeff * SpMat(*p.dot_op * *p.field_op);
          }
        }
      }
    }
  }

  for (int n = 0; n < cfg.dot_count(); ++n) {
    for (int m = n + 1; m < cfg.dot_count(); ++m) {
      for (int i = 0; i < cfg.level_count(n); ++i) {
        for (int j = i + 1; j < cfg.level_count(n); ++j) {
          const Complex eta_n = c.eta_at(n, i, j);
          if (eta_n == Complex{}) continue;
          for (int p = 0; p < cfg.level_count(m); ++p) {
            for (int q = p + 1; q < cfg.level_count(m); ++q) {
              const Complex eta_m = c.eta_at(m, p, q);
              if (eta_m == Complex{}) continue;
              struct Half {
                Complex coeff;
                int a;
                int b;
              };
              const Half left[] = {{eta_n, i, j}, {std::conj(eta_n), j, i}};
              const Half right[] = {{eta_m, p, q}, {std::conj(eta_m), q, p}};
              for (const auto& l : left) {
                for (const auto& r : right) {
                  // Keep only one-up/one-down exchanges under the rotating-wave approximation.
                  if (rwa && raises(n, l.a, l.b) == raises(m, r.a, r.b)) continue;
                  h += (l.coeff * r.coeff) * SpMat(sigma(n, l.a, l.b) * sigma(m, r.a, r.b));
                }
              }
            }
          }
        }
      }
    }
  }

  const auto size = static_cast<Eigen::Index>(basis.size());
  std::vector<Eigen::Index> product_index(basis.size());
  std::vector<double> energy(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    product_index[k] = space.index_of(basis[k]);
    energy[k] = bare_energy(cfg, basis[k].levels, basis[k].photons);
  }
  const Eigen::MatrixXcd dense(h);
  Eigen::MatrixXcd out(size, size);
  for (Eigen::Index row = 0; row < size; ++row) {
    for (Eigen::Index col = 0; col < size; ++col) {
      const auto r = static_cast<std::size_t>(row);
      const auto cidx = static_cast<std::size_t>(col);
      out(row, col) = dense(product_index[r], product_index[cidx]) * std::polar(1.0, (energy[r] - energy[cidx]) * t);
    }
  }
  return out;
}

}  // namespace qdm
