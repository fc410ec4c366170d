#pragma once

// Directed multigraphs given by a multiplicity matrix, their paths, vertex
// permutations and brute-force isomorphism search.
//
// Indexing is 0-based throughout the library. C(i, j) counts the arrows
// from vertex j to vertex i. File and text formats use 1-based indices and
// convert at the boundary.
//
// Paths are stored as operator words: arrows()[0] is the last arrow
// traversed, arrows().back() the first. A word a_1 a_2 ... a_k is
// composable when source(a_m) == target(a_{m+1}), so the path runs from
// source(a_k) to target(a_1). This is the order in which creation operators
// multiply: T_{a_1} T_{a_2} ... T_{a_k}.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "quiver/error.hpp"

namespace quiver {

using Permutation = std::vector<std::size_t>;

class Quiver {
 public:
  Quiver() : Quiver(1) {}

  explicit Quiver(std::size_t n) : n_(n), counts_(n * n, 0) {
    if (n == 0) throw precondition_error("quiver needs at least one vertex");
  }

  // Row-major multiplicity matrix: counts[i][j] = arrows from j to i.
  explicit Quiver(const std::vector<std::vector<std::size_t>>& counts)
      : Quiver(counts.size()) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (counts[i].size() != n_)
        throw shape_error("multiplicity matrix must be square");
      for (std::size_t j = 0; j < n_; ++j) counts_[i * n_ + j] = counts[i][j];
    }
  }

  Quiver(std::initializer_list<std::initializer_list<std::size_t>> rows)
      : Quiver(std::vector<std::vector<std::size_t>>(rows.begin(), rows.end())) {}

  std::size_t vertex_count() const { return n_; }

  std::size_t count(std::size_t target, std::size_t source) const {
    return counts_.at(target * n_ + source);
  }

  void set_count(std::size_t target, std::size_t source, std::size_t c) {
    counts_.at(target * n_ + source) = c;
  }

  std::vector<std::vector<std::size_t>> matrix() const {
    std::vector<std::vector<std::size_t>> m(n_, std::vector<std::size_t>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) m[i][j] = count(i, j);
    return m;
  }

  std::size_t arrow_count() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
  }

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  std::size_t n_;
  std::vector<std::size_t> counts_;
};

struct Arrow {
  std::size_t target;
  std::size_t source;
  std::size_t index;  // in [0, C(target, source))

  // Canonical order: block (target, source) row-major, then index.
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

inline bool is_valid(const Quiver& q, const Arrow& a) {
  return a.target < q.vertex_count() && a.source < q.vertex_count() &&
         a.index < q.count(a.target, a.source);
}

inline bool is_loop(const Arrow& a) { return a.target == a.source; }

// All arrows of q in canonical order.
inline std::vector<Arrow> arrows(const Quiver& q) {
  std::vector<Arrow> out;
  out.reserve(q.arrow_count());
  const std::size_t n = q.vertex_count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < q.count(i, j); ++k) out.push_back({i, j, k});
  return out;
}

class Path {
 public:
  static Path vertex(std::size_t v) { return Path(v, {}); }

  static Path single(const Arrow& a) { return Path(a.source, {a}); }

  // Throws precondition_error if the word is empty or not composable.
  static Path word(std::vector<Arrow> arrows) {
    if (arrows.empty())
      throw precondition_error("use Path::vertex for length-0 paths");
    for (std::size_t m = 0; m + 1 < arrows.size(); ++m)
      if (arrows[m].source != arrows[m + 1].target)
        throw precondition_error("arrows are not composable");
    const std::size_t src = arrows.back().source;
    return Path(src, std::move(arrows));
  }

  std::size_t length() const { return arrows_.size(); }
  std::size_t source() const { return arrows_.empty() ? base_ : arrows_.back().source; }
  std::size_t target() const { return arrows_.empty() ? base_ : arrows_.front().target; }
  bool is_vertex() const { return arrows_.empty(); }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  // Prepends a (the new last-traversed arrow). Caller guarantees
  // a.source == target().
  Path extended_by(const Arrow& a) const {
    std::vector<Arrow> w;
    w.reserve(arrows_.size() + 1);
    w.push_back(a);
    w.insert(w.end(), arrows_.begin(), arrows_.end());
    return Path(base_, std::move(w));
  }

  // (length, target, source, arrows in word order).
  friend std::strong_ordering operator<=>(const Path& x, const Path& y) {
    if (auto c = x.length() <=> y.length(); c != 0) return c;
    if (auto c = x.target() <=> y.target(); c != 0) return c;
    if (auto c = x.source() <=> y.source(); c != 0) return c;
    return std::lexicographical_compare_three_way(
        x.arrows_.begin(), x.arrows_.end(), y.arrows_.begin(), y.arrows_.end());
  }
  friend bool operator==(const Path& x, const Path& y) {
    return (x <=> y) == std::strong_ordering::equal;
  }

 private:
  Path(std::size_t base, std::vector<Arrow> arrows)
      : base_(base), arrows_(std::move(arrows)) {}

  std::size_t base_;
  std::vector<Arrow> arrows_;
};

inline bool is_valid(const Quiver& q, const Path& p) {
  if (p.is_vertex()) return p.source() < q.vertex_count();
  return std::all_of(p.arrows().begin(), p.arrows().end(),
                     [&](const Arrow& a) { return is_valid(q, a); });
}

// "p after r": defined when r ends where p starts.
inline std::optional<Path> compose(const Path& p, const Path& r) {
  if (r.target() != p.source()) return std::nullopt;
  if (p.is_vertex()) return r;
  if (r.is_vertex()) return p;
  std::vector<Arrow> w = p.arrows();
  w.insert(w.end(), r.arrows().begin(), r.arrows().end());
  return Path::word(std::move(w));
}

// Every path of length <= max_len in canonical order.
inline std::vector<Path> enumerate_paths(const Quiver& q, std::size_t max_len) {
  std::vector<Path> out;
  std::vector<Path> level;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) level.push_back(Path::vertex(v));
  const auto all = arrows(q);
  for (std::size_t len = 0;; ++len) {
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
    if (len == max_len || level.empty()) break;
    std::vector<Path> next;
    for (const Path& p : level)
      for (const Arrow& a : all)
        if (a.source == p.target()) next.push_back(p.extended_by(a));
    level = std::move(next);
  }
  return out;
}

inline bool is_permutation_of(const Permutation& tau, std::size_t n) {
  if (tau.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t v : tau) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

inline Permutation inverse(const Permutation& tau) {
  Permutation inv(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) inv.at(tau[i]) = i;
  return inv;
}

// C'(i, j) = C(tau(i), tau(j)).
inline Quiver apply_permutation(const Quiver& q, const Permutation& tau) {
  const std::size_t n = q.vertex_count();
  if (!is_permutation_of(tau, n))
    throw precondition_error("vertex map is not a bijection on " +
                             std::to_string(n) + " vertices");
  Quiver out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set_count(i, j, q.count(tau[i], tau[j]));
  return out;
}

inline constexpr std::size_t default_isomorphism_limit = 8;

// Lexicographically least tau with q2 == apply_permutation(q1, tau), by
// exhaustive search over S_n.
inline std::optional<Permutation> are_isomorphic(
    const Quiver& q1, const Quiver& q2,
    std::size_t max_vertices = default_isomorphism_limit) {
  const std::size_t n = q1.vertex_count();
  if (n != q2.vertex_count()) return std::nullopt;
  if (n > max_vertices)
    throw size_limit_error("size limit exceeded: isomorphism search capped at " +
                           std::to_string(max_vertices) + " vertices");
  if (q1.arrow_count() != q2.arrow_count()) return std::nullopt;

  Permutation tau(n);
  std::iota(tau.begin(), tau.end(), std::size_t{0});
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        ok = q2.count(i, j) == q1.count(tau[i], tau[j]);
    if (ok) return tau;
  } while (std::next_permutation(tau.begin(), tau.end()));
  return std::nullopt;
}

}  // namespace quiver
