#pragma once

// The correspondence E(C) over the diagonal algebra D_n.
//
// An element xi is an n x n array of blocks; block (i, j) lives in
// C^{C(i,j)}. The arrow (i, j, k) is the k-th standard basis vector of
// block (i, j). Scalar inner products are conjugate-linear in the first
// argument and linear in the second, which is Eigen's dot() convention.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "quiver/error.hpp"
#include "quiver/quiver.hpp"

namespace quiver {

using complex = std::complex<double>;
using cvector = Eigen::VectorXcd;
using cmatrix = Eigen::MatrixXcd;

// Element of D_n, stored as its diagonal.
class DiagonalElement {
 public:
  explicit DiagonalElement(cvector entries) : d_(std::move(entries)) {}

  static DiagonalElement identity(std::size_t n) {
    return DiagonalElement(cvector::Ones(static_cast<Eigen::Index>(n)));
  }
  static DiagonalElement zero(std::size_t n) {
    return DiagonalElement(cvector::Zero(static_cast<Eigen::Index>(n)));
  }
  // Minimal idempotent e_i.
  static DiagonalElement idempotent(std::size_t n, std::size_t i) {
    auto d = zero(n);
    d.d_(static_cast<Eigen::Index>(i)) = 1.0;
    return d;
  }

  std::size_t size() const { return static_cast<std::size_t>(d_.size()); }
  complex operator[](std::size_t i) const { return d_(static_cast<Eigen::Index>(i)); }
  const cvector& entries() const { return d_; }

  DiagonalElement adjoint() const { return DiagonalElement(d_.conjugate()); }

 private:
  cvector d_;
};

class CorrespondenceElement {
 public:
  explicit CorrespondenceElement(Quiver q) : q_(std::move(q)) {
    const std::size_t n = q_.vertex_count();
    blocks_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        blocks_.push_back(cvector::Zero(static_cast<Eigen::Index>(q_.count(i, j))));
  }

  // The basis vector named by an arrow.
  static CorrespondenceElement basis(const Quiver& q, const Arrow& a) {
    if (!is_valid(q, a)) throw shape_error("arrow is not part of the quiver");
    CorrespondenceElement xi(q);
    xi.block(a.target, a.source)(static_cast<Eigen::Index>(a.index)) = 1.0;
    return xi;
  }

  const Quiver& quiver() const { return q_; }

  const cvector& block(std::size_t i, std::size_t j) const {
    return blocks_.at(i * q_.vertex_count() + j);
  }
  cvector& block(std::size_t i, std::size_t j) {
    return blocks_.at(i * q_.vertex_count() + j);
  }

  // Replaces block (i, j); the dimension must equal C(i, j).
  void set_block(std::size_t i, std::size_t j, cvector v) {
    if (static_cast<std::size_t>(v.size()) != q_.count(i, j))
      throw shape_error("block dimension does not match the multiplicity");
    block(i, j) = std::move(v);
  }

  // Coordinate along an arrow, i.e. <e_a, xi>.
  complex component(const Arrow& a) const {
    return block(a.target, a.source)(static_cast<Eigen::Index>(a.index));
  }

  bool is_zero() const {
    return std::all_of(blocks_.begin(), blocks_.end(),
                       [](const cvector& b) { return b.isZero(0.0); });
  }

  CorrespondenceElement& operator+=(const CorrespondenceElement& other) {
    require_same(other);
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += other.blocks_[k];
    return *this;
  }

  CorrespondenceElement& operator*=(complex s) {
    for (auto& b : blocks_) b *= s;
    return *this;
  }

  friend CorrespondenceElement operator+(CorrespondenceElement a,
                                         const CorrespondenceElement& b) {
    return a += b;
  }
  friend CorrespondenceElement operator*(complex s, CorrespondenceElement a) {
    return a *= s;
  }

  void require_same(const CorrespondenceElement& other) const {
    if (!(q_ == other.q_)) throw shape_error("elements belong to different quivers");
  }

 private:
  Quiver q_;
  std::vector<cvector> blocks_;
};

// <xi, eta>_j = sum_i <xi_ij, eta_ij>.
inline DiagonalElement inner_product(const CorrespondenceElement& xi,
                                     const CorrespondenceElement& eta) {
  xi.require_same(eta);
  const std::size_t n = xi.quiver().vertex_count();
  cvector d = cvector::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      d(static_cast<Eigen::Index>(j)) += xi.block(i, j).dot(eta.block(i, j));
  return DiagonalElement(std::move(d));
}

inline void require_size(const DiagonalElement& d, const Quiver& q) {
  if (d.size() != q.vertex_count())
    throw shape_error("diagonal element has the wrong number of entries");
}

// (phi(D) xi)_ij = d_i xi_ij
inline CorrespondenceElement left_action(const DiagonalElement& d,
                                         CorrespondenceElement xi) {
  require_size(d, xi.quiver());
  const std::size_t n = xi.quiver().vertex_count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) xi.block(i, j) *= d[i];
  return xi;
}

// (xi D)_ij = xi_ij d_j
inline CorrespondenceElement right_action(CorrespondenceElement xi,
                                          const DiagonalElement& d) {
  require_size(d, xi.quiver());
  const std::size_t n = xi.quiver().vertex_count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) xi.block(i, j) *= d[j];
  return xi;
}

// Hilbert-module norm: sqrt(max_j <xi, xi>_j).
inline double element_norm(const CorrespondenceElement& xi) {
  const auto d = inner_product(xi, xi);
  double m = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) m = std::max(m, d[j].real());
  return std::sqrt(m);
}

// Length-k paths: an orthonormal basis of the k-th tensor power.
inline std::vector<Path> tensor_power_basis(const Quiver& q, std::size_t k) {
  auto all = enumerate_paths(q, k);
  std::erase_if(all, [k](const Path& p) { return p.length() != k; });
  return all;
}

}  // namespace quiver
