#pragma once

// Characters and two-dimensional upper-triangular representations of the
// quiver algebra.
//
// A character is a vertex i with a vector lambda in the closed unit ball of
// C^{C(i,i)}; it is delta_i on the diagonal and sends T_xi to <lambda, xi_ii>.
//
// A two-dimensional representation rho_gamma = T_gamma x sigma at the
// distinct vertices (i, j) sends a diagonal D to diag(d_i, d_j) and T_xi to
//
//     [ <lambda_i, xi_ii>   <gamma, xi_ij>   ]
//     [        0           <lambda_j, xi_jj> ]
//
// It is contractive exactly when |gamma|^2 <= 1 - |lambda_i|^2.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "quiver/algebra.hpp"
#include "quiver/correspondence.hpp"
#include "quiver/error.hpp"
#include "quiver/quiver.hpp"

namespace quiver {

using matrix2 = Eigen::Matrix2cd;

// Slack for boundary comparisons such as |gamma|^2 == 1 - |lambda_i|^2.
inline constexpr double boundary_tolerance = 1e-12;

class Character {
 public:
  Character(const Quiver& q, std::size_t vertex, cvector lambda)
      : q_(q), vertex_(vertex), lambda_(std::move(lambda)) {
    if (vertex_ >= q_.vertex_count()) throw shape_error("character vertex out of range");
    if (static_cast<std::size_t>(lambda_.size()) != q_.count(vertex_, vertex_))
      throw shape_error("character parameter must have dimension C(i,i)");
    if (lambda_.squaredNorm() > 1.0 + boundary_tolerance)
      throw precondition_error("character parameter outside the closed unit ball");
  }

  const Quiver& quiver() const { return q_; }
  std::size_t vertex() const { return vertex_; }
  const cvector& lambda() const { return lambda_; }
  // Whether the character extends to the weak-* closure; metadata only.
  bool interior() const { return lambda_.norm() < 1.0; }

 private:
  Quiver q_;
  std::size_t vertex_;
  cvector lambda_;
};

inline complex char_eval(const Character& c, const PathPolynomial& p) {
  if (!(c.quiver() == p.quiver())) throw shape_error("character and polynomial quivers differ");
  const std::size_t i = c.vertex();
  complex sum{};
  for (const auto& [path, coeff] : p.terms()) {
    if (path.is_vertex()) {
      if (path.source() == i) sum += coeff;
      continue;
    }
    complex value = coeff;
    for (const Arrow& a : path.arrows()) {
      if (a.target != i || a.source != i) {
        value = 0.0;
        break;
      }
      value *= std::conj(c.lambda()(static_cast<Eigen::Index>(a.index)));
    }
    sum += value;
  }
  return sum;
}

// <lambda, xi_ii>
inline complex char_eval(const Character& c, const CorrespondenceElement& xi) {
  return c.lambda().dot(xi.block(c.vertex(), c.vertex()));
}

// Unvalidated parameters (i, j, lambda_i, lambda_j, gamma) over a quiver.
struct RepParameters {
  Quiver quiver;
  std::size_t i = 0;
  std::size_t j = 1;
  cvector lambda_i;
  cvector lambda_j;
  cvector gamma;

  double q1() const { return lambda_i.squaredNorm(); }
  double q2() const { return lambda_j.squaredNorm(); }
  double t() const { return gamma.squaredNorm(); }

  bool shapes_match() const {
    const std::size_t n = quiver.vertex_count();
    return i < n && j < n &&
           static_cast<std::size_t>(lambda_i.size()) == quiver.count(i, i) &&
           static_cast<std::size_t>(lambda_j.size()) == quiver.count(j, j) &&
           static_cast<std::size_t>(gamma.size()) == quiver.count(i, j);
  }
};

// Membership in the family G(C, lambda~, i, j): every member is rho_gamma
// with |gamma|^2 <= 1 - |lambda_i|^2, and every such rho_gamma is a member.
inline bool membership_G(const RepParameters& r) {
  return r.shapes_match() && r.i != r.j &&
         r.t() <= 1.0 - r.q1() + boundary_tolerance;
}

// A validated member of G(C, lambda~, i, j) with lambda~ in the open balls.
class TwoDimRep {
 public:
  explicit TwoDimRep(RepParameters p) : p_(std::move(p)) {
    if (!p_.shapes_match()) throw shape_error("representation parameters do not fit the quiver");
    if (p_.i == p_.j) throw precondition_error("representation vertices must differ");
    if (p_.q1() >= 1.0 || p_.q2() >= 1.0)
      throw precondition_error("lambda must lie in the open unit ball");
    if (!membership_G(p_)) throw precondition_error("representation is not contractive");
  }

  const RepParameters& params() const { return p_; }
  Character first() const { return Character(p_.quiver, p_.i, p_.lambda_i); }
  Character second() const { return Character(p_.quiver, p_.j, p_.lambda_j); }

 private:
  RepParameters p_;
};

// T_gamma(e_a) for a single arrow.
inline matrix2 arrow_matrix(const RepParameters& r, const Arrow& a) {
  matrix2 m = matrix2::Zero();
  const auto k = static_cast<Eigen::Index>(a.index);
  if (a.target == r.i && a.source == r.i) m(0, 0) = std::conj(r.lambda_i(k));
  if (a.target == r.i && a.source == r.j) m(0, 1) = std::conj(r.gamma(k));
  if (a.target == r.j && a.source == r.j) m(1, 1) = std::conj(r.lambda_j(k));
  return m;
}

// sigma(D) = diag(d_i, d_j) on the vertex idempotents.
inline matrix2 vertex_matrix(const RepParameters& r, std::size_t v) {
  matrix2 m = matrix2::Zero();
  if (v == r.i) m(0, 0) = 1.0;
  if (v == r.j) m(1, 1) = 1.0;
  return m;
}

inline matrix2 rho_eval(const RepParameters& r, const PathPolynomial& p) {
  if (!(r.quiver == p.quiver())) throw shape_error("representation and polynomial quivers differ");
  matrix2 sum = matrix2::Zero();
  for (const auto& [path, coeff] : p.terms()) {
    if (path.is_vertex()) {
      sum += coeff * vertex_matrix(r, path.source());
      continue;
    }
    matrix2 prod = matrix2::Identity();
    for (const Arrow& a : path.arrows()) prod = prod * arrow_matrix(r, a);
    sum += coeff * prod;
  }
  return sum;
}

inline matrix2 rho_eval(const TwoDimRep& r, const PathPolynomial& p) {
  return rho_eval(r.params(), p);
}

// T_gamma(xi) for xi in E(C).
inline matrix2 rho_eval(const TwoDimRep& r, const CorrespondenceElement& xi) {
  const auto& p = r.params();
  if (!(p.quiver == xi.quiver())) throw shape_error("representation and element quivers differ");
  matrix2 m = matrix2::Zero();
  m(0, 0) = p.lambda_i.dot(xi.block(p.i, p.i));
  m(0, 1) = p.gamma.dot(xi.block(p.i, p.j));
  m(1, 1) = p.lambda_j.dot(xi.block(p.j, p.j));
  return m;
}

// T~_gamma : E (x)_sigma C^2 -> C^2 as a 2 x M matrix. Columns run over the
// orthonormal basis e_a (x) f_s with source(a) = i for s = 0 and
// source(a) = j for s = 1; column = T_gamma(e_a) f_s.
inline cmatrix t_tilde_matrix(const RepParameters& r) {
  std::vector<cvector> cols;
  for (const Arrow& a : arrows(r.quiver)) {
    const matrix2 m = arrow_matrix(r, a);
    if (a.source == r.i) cols.push_back(m.col(0));
    if (a.source == r.j) cols.push_back(m.col(1));
  }
  cmatrix out(2, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = cols[c];
  return out;
}

inline matrix2 t_tilde_product_assembled(const RepParameters& r) {
  const cmatrix T = t_tilde_matrix(r);
  return T * T.adjoint();
}

// diag(|lambda_i|^2 + |gamma|^2, |lambda_j|^2), checked against the
// assembled product.
inline matrix2 t_tilde_product(const RepParameters& r) {
  if (!r.shapes_match()) throw shape_error("representation parameters do not fit the quiver");
  matrix2 closed = matrix2::Zero();
  closed(0, 0) = r.q1() + r.t();
  closed(1, 1) = r.q2();
  const matrix2 assembled = t_tilde_product_assembled(r);
  if ((closed - assembled).cwiseAbs().maxCoeff() > boundary_tolerance)
    throw consistency_error("closed and assembled T~T~* disagree");
  return closed;
}

// Tolerance below which q1 and q2 are treated as equal.
inline constexpr double degenerate_window = 1e-13;

// sum_{m=0}^{k-1} q1^(k-1-m) q2^m
inline double geometric_mix(double q1, double q2, unsigned k) {
  if (std::abs(q1 - q2) < degenerate_window)
    return k * std::pow(q1, static_cast<int>(k) - 1);
  double s = 0.0;
  for (unsigned m = 0; m < k; ++m)
    s += std::pow(q1, static_cast<int>(k - 1 - m)) * std::pow(q2, static_cast<int>(m));
  return s;
}

// ||T~_k|| from max{q1^k + t (q1^(k-1) + ... + q2^(k-1)), q2^k}.
inline double t_tilde_k_norm_closed(const RepParameters& r, unsigned k) {
  if (k == 0) throw precondition_error("k must be positive");
  const double q1 = r.q1(), q2 = r.q2(), t = r.t();
  const double top = std::pow(q1, static_cast<int>(k)) + t * geometric_mix(q1, q2, k);
  return std::sqrt(std::max(top, std::pow(q2, static_cast<int>(k))));
}

inline constexpr unsigned default_direct_power_cap = 6;

// T~_k on E^{(x)k} (x)_sigma C^2 built by T~_{k+1} = T~ (I_E (x) T~_k).
// Columns are indexed by (path w of length k, s) with source(w) the s-th
// vertex of the representation. Exactly zero columns are dropped as they
// appear; every extension of a zero column is zero, so the norm is unchanged.
inline cmatrix t_tilde_k_matrix(const RepParameters& r, unsigned k,
                                unsigned cap = default_direct_power_cap) {
  if (k == 0) throw precondition_error("k must be positive");
  if (k > cap)
    throw size_limit_error("direct T~_k construction capped at k = " + std::to_string(cap));
  if (!r.shapes_match()) throw shape_error("representation parameters do not fit the quiver");

  struct Column {
    std::size_t target;  // target of the path labelling the column
    Eigen::Vector2cd value;
  };
  const auto all = arrows(r.quiver);
  std::vector<Column> level;
  for (const Arrow& a : all) {
    const matrix2 m = arrow_matrix(r, a);
    if (a.source == r.i && !m.col(0).isZero(0.0)) level.push_back({a.target, m.col(0)});
    if (a.source == r.j && !m.col(1).isZero(0.0)) level.push_back({a.target, m.col(1)});
  }
  for (unsigned step = 1; step < k; ++step) {
    std::vector<Column> next;
    for (const Arrow& a : all) {
      const matrix2 m = arrow_matrix(r, a);
      if (m.isZero(0.0)) continue;
      for (const Column& c : level) {
        if (c.target != a.source) continue;
        const Eigen::Vector2cd v = m * c.value;
        if (!v.isZero(0.0)) next.push_back({a.target, v});
      }
    }
    level = std::move(next);
  }
  cmatrix out(2, static_cast<Eigen::Index>(level.size()));
  for (std::size_t c = 0; c < level.size(); ++c)
    out.col(static_cast<Eigen::Index>(c)) = level[c].value;
  return out;
}

inline double t_tilde_k_norm_direct(const RepParameters& r, unsigned k,
                                    unsigned cap = default_direct_power_cap) {
  const cmatrix T = t_tilde_k_matrix(r, k, cap);
  if (T.cols() == 0) return 0.0;
  Eigen::JacobiSVD<cmatrix> svd(T);
  return svd.singularValues()(0);
}

// q^k + k t q^(k-1) with q = max(q1, q2); bounds ||T~_k||^2.
inline double purity_bound(const RepParameters& r, unsigned k) {
  if (k == 0) throw precondition_error("k must be positive");
  if (r.q1() >= 1.0 || r.q2() >= 1.0) throw precondition_error("not in the pure regime");
  const double q = std::max(r.q1(), r.q2());
  return std::pow(q, static_cast<int>(k)) + k * r.t() * std::pow(q, static_cast<int>(k) - 1);
}

}  // namespace quiver
