#pragma once

// Reconstruction of the multiplicity matrix from a scrambled presentation
// of the quiver algebra.
//
// A presentation hides the vertex numbering behind a permutation tau (label
// a names the hidden vertex tau(a)) and the arrow bases behind a unitary
// change of basis on every block. Recovery reads C'(a, b) = C(tau(a), tau(b))
// back in two independent ways:
//
//  * span probe: the dimension of span{p_a g p_b : g a generator};
//  * representation probe: the rank of the (1,2)-entry functionals of
//    contractive two-dimensional representations with diagonal labels
//    (a, b), or of the characters at a when a == b. The parameter ball of
//    these families has dimension C'(a, b).

#include <Eigen/Dense>
#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "quiver/algebra.hpp"
#include "quiver/correspondence.hpp"
#include "quiver/error.hpp"
#include "quiver/quiver.hpp"
#include "quiver/reps.hpp"

namespace quiver {

// Singular values at or below this count as zero.
inline constexpr double rank_threshold = 1e-8;

inline std::size_t numeric_rank(const cmatrix& m, double threshold = rank_threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<cmatrix> svd(m);
  const auto& s = svd.singularValues();
  return static_cast<std::size_t>((s.array() > threshold).count());
}

struct HiddenTruth {
  Quiver quiver;
  Permutation tau;                 // label a -> hidden vertex tau[a]
  std::vector<cmatrix> unitaries;  // block (i, j) at i * n + j; 0 x 0 when empty
};

struct ScrambledPresentation {
  std::size_t n = 0;
  std::vector<PathPolynomial> idempotents;  // p_a, one per label
  std::vector<PathPolynomial> generators;   // degree one, single-block support
  std::optional<HiddenTruth> hidden_truth;  // tests and the CLI only
};

struct ProbeEvidence {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t span_rank = 0;
  std::size_t rep_rank = 0;
};

struct RecoveryReport {
  std::size_t n_recovered = 0;
  Quiver recovered;
  std::optional<Permutation> witness;
  std::vector<ProbeEvidence> evidence;  // (a, b) row-major
};

namespace detail {

// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
// of R's diagonal moved into Q.
template <class Rng>
cmatrix random_unitary(std::size_t dim, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  std::normal_distribution<double> normal;
  cmatrix g(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) g(r, c) = complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<cmatrix> qr(g);
  cmatrix Q = qr.householderQ();
  const cmatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < d; ++c) {
    const complex rc = R(c, c);
    if (std::abs(rc) > 0.0) Q.col(c) *= rc / std::abs(rc);
  }
  return Q;
}

// Coordinates of the arrow terms of p on block (i, j).
inline cvector block_coordinates(const PathPolynomial& p, std::size_t i, std::size_t j) {
  cvector v = cvector::Zero(static_cast<Eigen::Index>(p.quiver().count(i, j)));
  for (const auto& [path, c] : p.terms())
    if (path.length() == 1) {
      const Arrow& a = path.arrows().front();
      if (a.target == i && a.source == j) v(static_cast<Eigen::Index>(a.index)) = c;
    }
  return v;
}

// Coordinates of a degree-one polynomial in the canonical arrow basis.
inline cvector degree_one_coordinates(const PathPolynomial& p, const std::vector<Arrow>& basis) {
  cvector v = cvector::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& [path, c] : p.terms()) {
    if (path.length() != 1) throw precondition_error("expected a degree-one element");
    const auto pos = std::lower_bound(basis.begin(), basis.end(), path.arrows().front());
    v(pos - basis.begin()) = c;
  }
  return v;
}

}  // namespace detail

// Deterministic in seed (std::mt19937_64). With identity set, tau and the
// block unitaries are identities and the generators are the arrow basis in
// canonical order.
inline ScrambledPresentation scramble(const Quiver& q, std::uint64_t seed, bool identity = false) {
  const std::size_t n = q.vertex_count();
  std::mt19937_64 rng(seed);
  HiddenTruth truth{q, Permutation(n), {}};
  std::iota(truth.tau.begin(), truth.tau.end(), std::size_t{0});
  if (!identity) std::shuffle(truth.tau.begin(), truth.tau.end(), rng);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t c = q.count(i, j);
      const auto d = static_cast<Eigen::Index>(c);
      truth.unitaries.push_back(identity ? cmatrix(cmatrix::Identity(d, d))
                                         : detail::random_unitary(c, rng));
    }

  ScrambledPresentation s;
  s.n = n;
  for (std::size_t a = 0; a < n; ++a)
    s.idempotents.push_back(PathPolynomial::vertex(q, truth.tau[a]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cmatrix& U = truth.unitaries[i * n + j];
      for (std::size_t k = 0; k < q.count(i, j); ++k) {
        PathPolynomial g(q);
        for (std::size_t m = 0; m < q.count(i, j); ++m)
          g.add_term(Path::single({i, j, m}),
                     U(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)));
        s.generators.push_back(std::move(g));
      }
    }
  if (!identity) std::shuffle(s.generators.begin(), s.generators.end(), rng);
  s.hidden_truth = std::move(truth);
  return s;
}

// The vertex an idempotent label stands for; p_a must be a vertex monomial.
inline std::size_t label_vertex(const ScrambledPresentation& s, std::size_t a) {
  if (a >= s.idempotents.size()) throw precondition_error("idempotent label out of range");
  const auto& terms = s.idempotents[a].terms();
  if (terms.size() != 1 || !terms.begin()->first.is_vertex() || terms.begin()->second != 1.0)
    throw precondition_error("idempotent is not a minimal diagonal projection");
  return terms.begin()->first.source();
}

namespace detail {

inline const Quiver& presentation_quiver(const ScrambledPresentation& s) {
  if (s.idempotents.empty()) throw precondition_error("presentation has no idempotents");
  return s.idempotents.front().quiver();
}

// Columns: p_a g p_b for every generator g.
inline cmatrix compressed_span(const ScrambledPresentation& s, std::size_t a, std::size_t b) {
  label_vertex(s, a);
  label_vertex(s, b);
  const auto basis = arrows(presentation_quiver(s));
  cmatrix m(static_cast<Eigen::Index>(basis.size()),
            static_cast<Eigen::Index>(s.generators.size()));
  for (std::size_t g = 0; g < s.generators.size(); ++g)
    m.col(static_cast<Eigen::Index>(g)) = degree_one_coordinates(
        s.idempotents[a] * s.generators[g] * s.idempotents[b], basis);
  return m;
}

// Rank of {g' -> chi_r(g')} over characters chi_r at the vertex of a, with
// parameters drawn from the compressed generators.
inline std::size_t character_functional_rank(const ScrambledPresentation& s, std::size_t a) {
  const Quiver& q = presentation_quiver(s);
  const std::size_t i = label_vertex(s, a);
  std::vector<Character> chars;
  for (const auto& g : s.generators) {
    cvector lambda =
        block_coordinates(s.idempotents[a] * g * s.idempotents[a], i, i);
    if (lambda.norm() <= rank_threshold) continue;
    lambda.normalize();
    chars.emplace_back(q, i, std::move(lambda));
  }
  cmatrix m(static_cast<Eigen::Index>(chars.size()),
            static_cast<Eigen::Index>(s.generators.size()));
  for (std::size_t r = 0; r < chars.size(); ++r)
    for (std::size_t g = 0; g < s.generators.size(); ++g)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(g)) =
          char_eval(chars[r], s.generators[g]);
  return numeric_rank(m);
}

// Rank of {g' -> rho(g')_12} over contractive rho_gamma in G(C, 0, i, j),
// gamma drawn from the compressed generators. Also checks that each rho is
// sigma on the vertices, upper triangular, and carries the two characters
// on its diagonal.
inline std::size_t representation_functional_rank(const ScrambledPresentation& s,
                                                  std::size_t a, std::size_t b) {
  const Quiver& q = presentation_quiver(s);
  const std::size_t i = label_vertex(s, a), j = label_vertex(s, b);
  std::vector<TwoDimRep> reps;
  for (const auto& g : s.generators) {
    cvector gamma = block_coordinates(s.idempotents[a] * g * s.idempotents[b], i, j);
    if (gamma.norm() <= rank_threshold) continue;
    gamma.normalize();
    RepParameters p{q, i, j,
                    cvector::Zero(static_cast<Eigen::Index>(q.count(i, i))),
                    cvector::Zero(static_cast<Eigen::Index>(q.count(j, j))),
                    std::move(gamma)};
    if (!membership_G(p)) throw consistency_error("candidate representation is not contractive");
    reps.emplace_back(std::move(p));
  }
  cmatrix m(static_cast<Eigen::Index>(reps.size()),
            static_cast<Eigen::Index>(s.generators.size()));
  for (std::size_t r = 0; r < reps.size(); ++r) {
    const Character c1 = reps[r].first(), c2 = reps[r].second();
    for (std::size_t g = 0; g < s.generators.size(); ++g) {
      const matrix2 v = rho_eval(reps[r], s.generators[g]);
      if (std::abs(v(1, 0)) > 0.0 ||
          std::abs(v(0, 0) - char_eval(c1, s.generators[g])) > boundary_tolerance ||
          std::abs(v(1, 1) - char_eval(c2, s.generators[g])) > boundary_tolerance)
        throw consistency_error("representation violates the family conditions");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(g)) = v(0, 1);
    }
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      const matrix2 d = rho_eval(reps[r], PathPolynomial::vertex(q, v));
      if (d != vertex_matrix(reps[r].params(), v))
        throw consistency_error("representation is not sigma on the diagonal");
    }
  }
  return numeric_rank(m);
}

inline void require_same_rank(std::size_t span, std::size_t rep) {
  if (span != rep) throw consistency_error("span and representation probes disagree");
}

}  // namespace detail

// Dimension of the character ball at the vertex labelled a.
inline std::size_t probe_character_dimension(const ScrambledPresentation& s, std::size_t a) {
  const std::size_t span = numeric_rank(detail::compressed_span(s, a, a));
  detail::require_same_rank(span, detail::character_functional_rank(s, a));
  return span;
}

// Dimension of the gamma ball of G(C, 0, a, b); throws consistency_error if
// the two probes disagree.
inline ProbeEvidence probe_pair(const ScrambledPresentation& s, std::size_t a, std::size_t b) {
  ProbeEvidence e{a, b, numeric_rank(detail::compressed_span(s, a, b)), 0};
  e.rep_rank = a == b ? detail::character_functional_rank(s, a)
                      : detail::representation_functional_rank(s, a, b);
  detail::require_same_rank(e.span_rank, e.rep_rank);
  return e;
}

inline std::size_t probe_pair_dimension(const ScrambledPresentation& s, std::size_t a,
                                        std::size_t b) {
  if (a == b) throw precondition_error("pair probe needs distinct labels");
  return probe_pair(s, a, b).span_rank;
}

inline RecoveryReport recover(const ScrambledPresentation& s) {
  RecoveryReport rep;
  rep.n_recovered = s.idempotents.size();
  rep.recovered = Quiver(rep.n_recovered);
  for (std::size_t a = 0; a < rep.n_recovered; ++a)
    for (std::size_t b = 0; b < rep.n_recovered; ++b) {
      rep.evidence.push_back(probe_pair(s, a, b));
      rep.recovered.set_count(a, b, rep.evidence.back().span_rank);
    }
  if (s.hidden_truth) rep.witness = are_isomorphic(rep.recovered, s.hidden_truth->quiver);
  return rep;
}

}  // namespace quiver
