#pragma once

// Depth-truncated Fock representation.
//
// The induced space F(E) (x)_pi C^n, pi the identity representation of D_n,
// has an orthonormal basis indexed by paths: the word a_1 ... a_k with source
// s labels e_{a_1} (x) ... (x) e_{a_k} (x) delta_s. Truncating at depth N
// keeps the paths of length <= N. Creation operators send a path p to a.p and
// vanish on length-N paths, so every identity of the untruncated space holds
// on the block of paths of length <= N - 1.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include "quiver/algebra.hpp"
#include "quiver/correspondence.hpp"
#include "quiver/error.hpp"
#include "quiver/quiver.hpp"

namespace quiver {

using sparse_matrix = Eigen::SparseMatrix<complex>;

// Immutable; copies share the basis tables.
class FockSpace {
 public:
  struct Successor {
    std::size_t arrow;  // position in arrows(quiver)
    std::size_t row;    // basis index of arrow . path
  };

  FockSpace(const Quiver& q, std::size_t depth) {
    auto impl = std::make_shared<Impl>();
    impl->quiver = q;
    impl->depth = depth;
    impl->arrows = arrows(q);
    impl->basis = enumerate_paths(q, depth);
    for (std::size_t k = 0; k < impl->basis.size(); ++k) impl->index.emplace(impl->basis[k], k);
    impl->successors.resize(impl->basis.size());
    for (std::size_t k = 0; k < impl->basis.size(); ++k) {
      const Path& p = impl->basis[k];
      if (p.length() == depth) continue;
      for (std::size_t a = 0; a < impl->arrows.size(); ++a)
        if (impl->arrows[a].source == p.target())
          impl->successors[k].push_back({a, impl->index.at(p.extended_by(impl->arrows[a]))});
    }
    impl_ = std::move(impl);
  }

  const Quiver& quiver() const { return impl_->quiver; }
  std::size_t depth() const { return impl_->depth; }
  std::size_t dimension() const { return impl_->basis.size(); }
  const std::vector<Path>& basis() const { return impl_->basis; }
  const std::vector<Arrow>& arrow_list() const { return impl_->arrows; }

  std::optional<std::size_t> index_of(const Path& p) const {
    auto it = impl_->index.find(p);
    if (it == impl_->index.end()) return std::nullopt;
    return it->second;
  }

  // Nonzero images of basis vector k under the arrow creation operators.
  const std::vector<Successor>& successors(std::size_t k) const {
    return impl_->successors[k];
  }

  friend bool operator==(const FockSpace& a, const FockSpace& b) {
    return a.impl_ == b.impl_ ||
           (a.depth() == b.depth() && a.quiver() == b.quiver());
  }

 private:
  struct Impl {
    Quiver quiver;
    std::size_t depth = 0;
    std::vector<Arrow> arrows;
    std::vector<Path> basis;
    std::map<Path, std::size_t> index;
    std::vector<std::vector<Successor>> successors;
  };
  std::shared_ptr<const Impl> impl_;
};

struct FockOperator {
  FockSpace space;
  sparse_matrix matrix;
};

namespace detail {

inline Eigen::Index idx(std::size_t k) { return static_cast<Eigen::Index>(k); }

inline sparse_matrix from_triplets(std::size_t dim,
                                   const std::vector<Eigen::Triplet<complex>>& t) {
  sparse_matrix m(idx(dim), idx(dim));
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

}  // namespace detail

// T_xi: p -> sum_a xi_a (a . p), zero on length-N paths.
inline FockOperator creation_operator(const FockSpace& F, const CorrespondenceElement& xi) {
  if (!(xi.quiver() == F.quiver()))
    throw shape_error("correspondence element is over a different quiver");
  std::vector<Eigen::Triplet<complex>> t;
  const auto& arrows = F.arrow_list();
  for (std::size_t k = 0; k < F.dimension(); ++k)
    for (const auto& s : F.successors(k)) {
      const complex c = xi.component(arrows[s.arrow]);
      if (c != complex{}) t.emplace_back(detail::idx(s.row), detail::idx(k), c);
    }
  return {F, detail::from_triplets(F.dimension(), t)};
}

// phi_infinity(D): multiplies the basis vector of p by d_{target(p)}.
inline FockOperator diag_operator(const FockSpace& F, const DiagonalElement& d) {
  require_size(d, F.quiver());
  std::vector<Eigen::Triplet<complex>> t;
  for (std::size_t k = 0; k < F.dimension(); ++k) {
    const complex c = d[F.basis()[k].target()];
    if (c != complex{}) t.emplace_back(detail::idx(k), detail::idx(k), c);
  }
  return {F, detail::from_triplets(F.dimension(), t)};
}

// Induced representation of a path polynomial. A vertex path v_i maps to
// P_i; a word a_1 ... a_k maps to T_{a_1} ... T_{a_k}, computed by walking
// the successor table from the rightmost arrow.
inline FockOperator evaluate_polynomial(const FockSpace& F, const PathPolynomial& p) {
  if (!(p.quiver() == F.quiver()))
    throw shape_error("polynomial is over a different quiver");
  const auto& arrows = F.arrow_list();
  std::vector<Eigen::Triplet<complex>> t;
  for (const auto& [word, c] : p.terms()) {
    std::vector<std::size_t> arrow_pos;  // rightmost first
    for (auto it = word.arrows().rbegin(); it != word.arrows().rend(); ++it)
      arrow_pos.push_back(static_cast<std::size_t>(
          std::lower_bound(arrows.begin(), arrows.end(), *it) - arrows.begin()));
    for (std::size_t col = 0; col < F.dimension(); ++col) {
      if (F.basis()[col].target() != word.source()) continue;
      std::optional<std::size_t> row = col;
      for (std::size_t a : arrow_pos) {
        const auto& succ = F.successors(*row);
        auto hit = std::find_if(succ.begin(), succ.end(),
                                [a](const FockSpace::Successor& s) { return s.arrow == a; });
        row = hit == succ.end() ? std::nullopt : std::optional<std::size_t>(hit->row);
        if (!row) break;
      }
      if (row) t.emplace_back(detail::idx(*row), detail::idx(col), c);
    }
  }
  return {F, detail::from_triplets(F.dimension(), t)};
}

inline constexpr std::size_t dense_norm_limit = 2000;

// Largest singular value. Dense SVD below dense_norm_limit, otherwise power
// iteration on T*T.
inline double operator_norm(const sparse_matrix& m, double tol = 1e-9) {
  if (m.nonZeros() == 0) return 0.0;
  if (std::max(m.rows(), m.cols()) < static_cast<Eigen::Index>(dense_norm_limit)) {
    const cmatrix dense(m);
    Eigen::BDCSVD<cmatrix> svd(dense);
    return svd.singularValues()(0);
  }
  const sparse_matrix adj = m.adjoint();
  std::mt19937_64 rng(0);
  std::normal_distribution<double> normal;
  cvector x(m.cols());
  for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = complex(normal(rng), normal(rng));
  x.normalize();
  double prev = 0.0;
  for (int it = 0; it < 100000; ++it) {
    cvector y = adj * (m * x);
    const double lambda = y.norm();
    if (lambda == 0.0) return 0.0;
    x = y / lambda;
    if (std::abs(lambda - prev) <= tol * std::max(1.0, lambda)) return std::sqrt(lambda);
    prev = lambda;
  }
  return std::sqrt(prev);
}

inline double operator_norm(const FockOperator& T) { return operator_norm(T.matrix); }

// Largest |entry| of m on rows and columns whose paths have length <= max_len.
inline double restricted_max_abs(const FockSpace& F, const sparse_matrix& m,
                                 std::size_t max_len) {
  double dev = 0.0;
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    if (F.basis()[static_cast<std::size_t>(c)].length() > max_len) continue;
    for (sparse_matrix::InnerIterator it(m, c); it; ++it)
      if (F.basis()[static_cast<std::size_t>(it.row())].length() <= max_len)
        dev = std::max(dev, std::abs(it.value()));
  }
  return dev;
}

// max |(T_xi* T_eta - phi_inf(<xi, eta>))_{pq}| over paths of length <= N-1.
inline double check_isometric_covariance(const FockSpace& F, const CorrespondenceElement& xi,
                                         const CorrespondenceElement& eta) {
  if (F.depth() == 0) throw precondition_error("depth too small");
  const auto Txi = creation_operator(F, xi);
  const auto Teta = creation_operator(F, eta);
  const sparse_matrix lhs = sparse_matrix(Txi.matrix.adjoint()) * Teta.matrix;
  const sparse_matrix diff = lhs - diag_operator(F, inner_product(xi, eta)).matrix;
  return restricted_max_abs(F, diff, F.depth() - 1);
}

struct CornerShiftReport {
  std::size_t vertex = 0;
  std::size_t loops = 0;
  double isometry_deviation = 0.0;     // max |V_k* V_l - delta_kl I|
  double projection_deviation = 0.0;   // max |R^2 - R|, R = sum of range projections
  bool deficient = false;              // v_i is orthogonal to every range
  bool ok(double tol = 0.0) const {
    return isometry_deviation <= tol && projection_deviation <= tol && deficient;
  }
};

// Loop operators V_k = P_i T_{e_ii^(k)} P_i on the corner at vertex i, with
// domain the corner paths of length <= N-1: isometries with pairwise
// orthogonal ranges whose sum misses the vertex path.
inline CornerShiftReport check_corner_shifts(const FockSpace& F, std::size_t vertex) {
  if (F.depth() == 0) throw precondition_error("depth too small");
  const Quiver& q = F.quiver();
  CornerShiftReport rep;
  rep.vertex = vertex;
  rep.loops = q.count(vertex, vertex);

  // Basis index -> position in the corner / domain, or -1.
  std::vector<Eigen::Index> corner_pos(F.dimension(), -1), domain_pos(F.dimension(), -1);
  Eigen::Index cor = 0, dom = 0;
  for (std::size_t k = 0; k < F.dimension(); ++k) {
    const Path& p = F.basis()[k];
    if (p.target() != vertex) continue;
    corner_pos[k] = cor++;
    if (p.length() + 1 <= F.depth()) domain_pos[k] = dom++;
  }

  const auto P = diag_operator(F, DiagonalElement::idempotent(q.vertex_count(), vertex));
  std::vector<sparse_matrix> V;  // corner x domain blocks
  for (std::size_t k = 0; k < rep.loops; ++k) {
    const auto T = creation_operator(
        F, CorrespondenceElement::basis(q, Arrow{vertex, vertex, k}));
    const sparse_matrix full = P.matrix * T.matrix * P.matrix;
    std::vector<Eigen::Triplet<complex>> t;
    for (Eigen::Index c = 0; c < full.outerSize(); ++c) {
      const Eigen::Index dc = domain_pos[static_cast<std::size_t>(c)];
      if (dc < 0) continue;
      for (sparse_matrix::InnerIterator it(full, c); it; ++it) {
        const Eigen::Index rc = corner_pos[static_cast<std::size_t>(it.row())];
        if (rc < 0) throw consistency_error("corner operator leaves the corner");
        t.emplace_back(rc, dc, it.value());
      }
    }
    sparse_matrix block(cor, dom);
    block.setFromTriplets(t.begin(), t.end());
    V.push_back(std::move(block));
  }

  auto max_abs = [](const sparse_matrix& m) {
    double d = 0.0;
    for (Eigen::Index c = 0; c < m.outerSize(); ++c)
      for (sparse_matrix::InnerIterator it(m, c); it; ++it) d = std::max(d, std::abs(it.value()));
    return d;
  };
  sparse_matrix identity(dom, dom);
  identity.setIdentity();
  sparse_matrix R(cor, cor);
  for (std::size_t k = 0; k < V.size(); ++k) {
    const sparse_matrix Vk_adj = V[k].adjoint();
    for (std::size_t l = 0; l < V.size(); ++l) {
      sparse_matrix gram = Vk_adj * V[l];
      if (k == l) gram -= identity;
      rep.isometry_deviation = std::max(rep.isometry_deviation, max_abs(gram));
    }
    R += sparse_matrix(V[k] * Vk_adj);
  }
  rep.projection_deviation = max_abs(sparse_matrix(R * R - R));
  const Eigen::Index v = corner_pos[*F.index_of(Path::vertex(vertex))];
  rep.deficient = max_abs(sparse_matrix(R.col(v))) == 0.0;
  return rep;
}

}  // namespace quiver
