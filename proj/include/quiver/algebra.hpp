#pragma once

// Finite linear combinations of paths: the dense subalgebra of the tensor
// algebra generated by the creation operators and the diagonal.
// Multiplication is path composition; non-composable products vanish.

#include <complex>
#include <cstddef>
#include <map>
#include <string>

#include "quiver/correspondence.hpp"
#include "quiver/error.hpp"
#include "quiver/quiver.hpp"

namespace quiver {

inline constexpr std::size_t max_polynomial_degree = 16;

class PathPolynomial {
 public:
  using term_map = std::map<Path, complex>;

  explicit PathPolynomial(Quiver q) : q_(std::move(q)) {}

  static PathPolynomial monomial(const Quiver& q, const Path& p, complex c = 1.0) {
    PathPolynomial out(q);
    out.add_term(p, c);
    return out;
  }
  static PathPolynomial vertex(const Quiver& q, std::size_t v) {
    return monomial(q, Path::vertex(v));
  }
  static PathPolynomial arrow(const Quiver& q, const Arrow& a) {
    return monomial(q, Path::single(a));
  }
  // sum_i v_i
  static PathPolynomial unit(const Quiver& q) {
    PathPolynomial out(q);
    for (std::size_t v = 0; v < q.vertex_count(); ++v) out.add_term(Path::vertex(v), 1.0);
    return out;
  }

  const Quiver& quiver() const { return q_; }
  const term_map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Maximal path length among the terms; 0 for the zero polynomial.
  std::size_t degree() const {
    return terms_.empty() ? 0 : terms_.rbegin()->first.length();
  }

  complex coefficient(const Path& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? complex{} : it->second;
  }

  void add_term(const Path& p, complex c) {
    if (!is_valid(q_, p)) throw shape_error("path is not part of the quiver");
    if (p.length() > max_polynomial_degree)
      throw size_limit_error("polynomial degree exceeds " +
                             std::to_string(max_polynomial_degree));
    if (c == complex{}) return;
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (it->second == complex{}) terms_.erase(it);
    }
  }

  void require_same(const PathPolynomial& other) const {
    if (!(q_ == other.q_)) throw shape_error("polynomials belong to different quivers");
  }

  friend bool operator==(const PathPolynomial&, const PathPolynomial&) = default;

 private:
  Quiver q_;
  term_map terms_;
};

inline PathPolynomial poly_add(const PathPolynomial& p, const PathPolynomial& q) {
  p.require_same(q);
  PathPolynomial out = p;
  for (const auto& [path, c] : q.terms()) out.add_term(path, c);
  return out;
}

inline PathPolynomial poly_scale(complex s, const PathPolynomial& p) {
  PathPolynomial out(p.quiver());
  for (const auto& [path, c] : p.terms()) out.add_term(path, s * c);
  return out;
}

inline PathPolynomial poly_mul(const PathPolynomial& p, const PathPolynomial& q) {
  p.require_same(q);
  if (!p.is_zero() && !q.is_zero() &&
      p.degree() + q.degree() > max_polynomial_degree)
    throw size_limit_error("product degree exceeds " +
                           std::to_string(max_polynomial_degree));
  PathPolynomial out(p.quiver());
  for (const auto& [x, cx] : p.terms())
    for (const auto& [y, cy] : q.terms())
      if (auto xy = compose(x, y)) out.add_term(*xy, cx * cy);
  return out;
}

inline PathPolynomial operator+(const PathPolynomial& p, const PathPolynomial& q) {
  return poly_add(p, q);
}
inline PathPolynomial operator-(const PathPolynomial& p, const PathPolynomial& q) {
  return poly_add(p, poly_scale(-1.0, q));
}
inline PathPolynomial operator*(const PathPolynomial& p, const PathPolynomial& q) {
  return poly_mul(p, q);
}
inline PathPolynomial operator*(complex s, const PathPolynomial& p) {
  return poly_scale(s, p);
}

// sum over arrows a of xi_a * a; evaluates to the creation operator T_xi.
inline PathPolynomial poly_from_correspondence(const CorrespondenceElement& xi) {
  PathPolynomial out(xi.quiver());
  for (const Arrow& a : arrows(xi.quiver())) out.add_term(Path::single(a), xi.component(a));
  return out;
}

}  // namespace quiver
