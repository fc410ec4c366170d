#pragma once

#include <random>

#include "quiver/algebra.hpp"
#include "quiver/correspondence.hpp"
#include "quiver/quiver.hpp"

namespace testutil {

using namespace quiver;

inline complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

inline cvector random_vector(std::mt19937_64& rng, std::size_t dim) {
  cvector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = gaussian(rng);
  return v;
}

inline CorrespondenceElement random_element(std::mt19937_64& rng, const Quiver& q) {
  CorrespondenceElement xi(q);
  for (std::size_t i = 0; i < q.vertex_count(); ++i)
    for (std::size_t j = 0; j < q.vertex_count(); ++j)
      xi.set_block(i, j, random_vector(rng, q.count(i, j)));
  return xi;
}

inline DiagonalElement random_diagonal(std::mt19937_64& rng, std::size_t n) {
  return DiagonalElement(random_vector(rng, n));
}

// Random polynomial with terms of length <= max_degree.
inline PathPolynomial random_polynomial(std::mt19937_64& rng, const Quiver& q,
                                        std::size_t max_degree, std::size_t terms) {
  const auto paths = enumerate_paths(q, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, paths.size() - 1);
  PathPolynomial p(q);
  for (std::size_t t = 0; t < terms; ++t) p.add_term(paths[pick(rng)], gaussian(rng));
  return p;
}

// Small Gaussian-integer coefficients: products and sums stay exact in double.
inline PathPolynomial random_integer_polynomial(std::mt19937_64& rng, const Quiver& q,
                                                std::size_t max_degree, std::size_t terms) {
  const auto paths = enumerate_paths(q, max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, paths.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  PathPolynomial p(q);
  for (std::size_t t = 0; t < terms; ++t)
    p.add_term(paths[pick(rng)], complex(coef(rng), coef(rng)));
  return p;
}

inline double max_abs(const cmatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace testutil
