#include <gtest/gtest.h>

#include "oracles.hpp"
#include "quiver/fock.hpp"
#include "test_util.hpp"

using namespace quiver;
using testutil::max_abs;
using testutil::random_diagonal;
using testutil::random_element;

namespace {

cmatrix dense(const FockOperator& T) { return cmatrix(T.matrix); }

std::size_t at(const FockSpace& F, const Path& p) { return *F.index_of(p); }

}  // namespace

TEST(FockSpace, BasisIsCanonicalEnumeration) {
  const Quiver q({{1, 2}, {0, 1}});
  const FockSpace F(q, 3);
  EXPECT_EQ(F.basis(), enumerate_paths(q, 3));
  for (std::size_t k = 0; k < F.dimension(); ++k) EXPECT_EQ(at(F, F.basis()[k]), k);
}

TEST(CreationOperator, TruncatedShift) {
  const Quiver q({{1}});
  const FockSpace F(q, 2);
  const Arrow a{0, 0, 0};
  const cmatrix T = dense(creation_operator(F, CorrespondenceElement::basis(q, a)));
  cmatrix expect = cmatrix::Zero(3, 3);
  expect(1, 0) = 1.0;  // v -> a
  expect(2, 1) = 1.0;  // a -> aa
  EXPECT_EQ(T, expect);  // aa -> 0
}

TEST(CreationOperator, ZeroElement) {
  const Quiver q({{2, 1}, {1, 0}});
  const FockSpace F(q, 3);
  EXPECT_EQ(creation_operator(F, CorrespondenceElement(q)).matrix.nonZeros(), 0);
}

TEST(CreationOperator, TwoLoopsHaveOrthogonalRanges) {
  const Quiver q({{2}});
  const FockSpace F(q, 4);
  const cmatrix T1 = dense(creation_operator(F, CorrespondenceElement::basis(q, {0, 0, 0})));
  const cmatrix T2 = dense(creation_operator(F, CorrespondenceElement::basis(q, {0, 0, 1})));
  // Every column of T1 is orthogonal to every column of T2.
  EXPECT_EQ(max_abs(T1.adjoint() * T2), 0.0);
}

TEST(CreationOperator, ShapeMismatch) {
  const FockSpace F(Quiver({{1}}), 2);
  EXPECT_THROW(creation_operator(F, CorrespondenceElement(Quiver({{2}}))), shape_error);
  EXPECT_THROW(diag_operator(F, DiagonalElement::identity(2)), shape_error);
}

TEST(DiagOperator, IdentityAndProjection) {
  const Quiver q({{1, 1}, {1, 0}});
  const FockSpace F(q, 3);
  const auto dim = static_cast<Eigen::Index>(F.dimension());
  EXPECT_EQ(dense(diag_operator(F, DiagonalElement::identity(2))), cmatrix::Identity(dim, dim));
  const cmatrix P = dense(diag_operator(F, DiagonalElement::idempotent(2, 1)));
  for (std::size_t k = 0; k < F.dimension(); ++k)
    EXPECT_EQ(P(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)),
              complex(F.basis()[k].target() == 1 ? 1.0 : 0.0));
  EXPECT_EQ(max_abs(P * P - P), 0.0);
}

TEST(DiagOperator, TargetGovernsEntry) {
  const Quiver q({{0, 1}, {0, 0}});
  const FockSpace F(q, 1);
  const DiagonalElement d((cvector(2) << 2.0, 3.0).finished());
  const cmatrix D = dense(diag_operator(F, d));
  const auto k = static_cast<Eigen::Index>(at(F, Path::single({0, 1, 0})));
  EXPECT_EQ(D(k, k), complex(2.0));
}

TEST(EvaluatePolynomial, VertexIsProjection) {
  const Quiver q({{1, 1}, {1, 0}});
  const FockSpace F(q, 3);
  EXPECT_EQ(dense(evaluate_polynomial(F, PathPolynomial::vertex(q, 0))),
            dense(diag_operator(F, DiagonalElement::idempotent(2, 0))));
}

TEST(EvaluatePolynomial, ArrowIsCreation) {
  const Quiver q({{1, 2}, {1, 0}});
  const FockSpace F(q, 3);
  for (const auto& a : arrows(q))
    EXPECT_EQ(dense(evaluate_polynomial(F, PathPolynomial::arrow(q, a))),
              dense(creation_operator(F, CorrespondenceElement::basis(q, a))));
}

TEST(EvaluatePolynomial, ComposableWordIsMatrixProduct) {
  const Quiver q({{1, 2}, {1, 0}});
  const FockSpace F(q, 4);
  const Arrow a{0, 1, 1}, b{1, 0, 0}, c{0, 0, 0};
  const auto word = Path::word({a, b, c});
  const cmatrix expect = dense(creation_operator(F, CorrespondenceElement::basis(q, a))) *
                         dense(creation_operator(F, CorrespondenceElement::basis(q, b))) *
                         dense(creation_operator(F, CorrespondenceElement::basis(q, c)));
  EXPECT_EQ(dense(evaluate_polynomial(F, PathPolynomial::monomial(q, word))), expect);
}

TEST(EvaluatePolynomial, CorrespondenceImageIsCreationOperator) {
  std::mt19937_64 rng(9);
  const Quiver q({{2, 1}, {1, 1}});
  const FockSpace F(q, 3);
  const auto xi = random_element(rng, q);
  EXPECT_LE(max_abs(dense(evaluate_polynomial(F, poly_from_correspondence(xi))) -
                    dense(creation_operator(F, xi))),
            1e-12);
}

TEST(EvaluatePolynomial, HomomorphismOnRestrictedBlock) {
  std::mt19937_64 rng(21);
  const Quiver q({{1, 2}, {1, 1}});
  const FockSpace F(q, 5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = testutil::random_polynomial(rng, q, 2, 4);
    const auto r = testutil::random_polynomial(rng, q, 2, 4);
    const sparse_matrix prod =
        evaluate_polynomial(F, p).matrix * evaluate_polynomial(F, r).matrix;
    const sparse_matrix diff = evaluate_polynomial(F, p * r).matrix - prod;
    // Columns of length <= N - deg(p) - deg(r) see no truncation.
    const std::size_t keep = 5 - p.degree() - r.degree();
    double dev = 0.0;
    for (Eigen::Index col = 0; col < diff.outerSize(); ++col) {
      if (F.basis()[static_cast<std::size_t>(col)].length() > keep) continue;
      for (sparse_matrix::InnerIterator it(diff, col); it; ++it)
        dev = std::max(dev, std::abs(it.value()));
    }
    EXPECT_LE(dev, 1e-12);
  }
}

TEST(OperatorNorm, IdentityZeroAndUnitElement) {
  const Quiver q({{1, 2}, {0, 1}});
  const FockSpace F(q, 3);
  EXPECT_NEAR(operator_norm(diag_operator(F, DiagonalElement::identity(2))), 1.0, 1e-12);
  EXPECT_EQ(operator_norm(creation_operator(F, CorrespondenceElement(q))), 0.0);
  std::mt19937_64 rng(4);
  auto xi = random_element(rng, q);
  xi *= 1.0 / element_norm(xi);
  EXPECT_NEAR(operator_norm(creation_operator(F, xi)), 1.0, 1e-12);
}

TEST(OperatorNorm, PowerIterationAboveDenseLimit) {
  const Quiver q({{3}});
  const FockSpace F(q, 7);  // 1 + 3 + ... + 3^7 = 3280
  ASSERT_GE(F.dimension(), dense_norm_limit);
  std::mt19937_64 rng(8);
  auto xi = random_element(rng, q);
  xi *= 2.5 / element_norm(xi);
  EXPECT_NEAR(operator_norm(creation_operator(F, xi)), 2.5, 1e-8);
}

TEST(OperatorNorm, DenseMatchesPowerIteration) {
  std::mt19937_64 rng(12);
  const Quiver q({{1, 1}, {1, 1}});
  const FockSpace F(q, 6);
  const auto p = testutil::random_polynomial(rng, q, 1, 5);
  const auto T = evaluate_polynomial(F, p);
  const double dense_norm = operator_norm(T.matrix);
  // Same matrix embedded in a larger zero-padded one goes through power iteration.
  sparse_matrix big(2100, 2100);
  std::vector<Eigen::Triplet<complex>> t;
  for (Eigen::Index c = 0; c < T.matrix.outerSize(); ++c)
    for (sparse_matrix::InnerIterator it(T.matrix, c); it; ++it)
      t.emplace_back(it.row(), it.col(), it.value());
  big.setFromTriplets(t.begin(), t.end());
  EXPECT_NEAR(operator_norm(big), dense_norm, 1e-6 * dense_norm);
}

TEST(IsometricCovariance, BasisArrows) {
  const Quiver q({{1, 2}, {0, 1}});
  const FockSpace F(q, 3);
  const auto all = arrows(q);
  for (const auto& a : all)
    for (const auto& b : all)
      EXPECT_EQ(check_isometric_covariance(F, CorrespondenceElement::basis(q, a),
                                           CorrespondenceElement::basis(q, b)),
                0.0);
}

TEST(IsometricCovariance, RandomPairs) {
  std::mt19937_64 rng(77);
  const Quiver q({{1, 2}, {0, 1}});
  const FockSpace F(q, 3);
  for (int trial = 0; trial < 10; ++trial)
    EXPECT_LE(check_isometric_covariance(F, random_element(rng, q), random_element(rng, q)),
              1e-12);
}

TEST(IsometricCovariance, TruncationBoundaryIsExcluded) {
  // On the full block the boundary row/column breaks the identity.
  const Quiver q({{1}});
  const FockSpace F(q, 2);
  const auto e = CorrespondenceElement::basis(q, {0, 0, 0});
  const sparse_matrix T = creation_operator(F, e).matrix;
  const sparse_matrix diff = sparse_matrix(T.adjoint()) * T -
                             diag_operator(F, inner_product(e, e)).matrix;
  EXPECT_EQ(restricted_max_abs(F, diff, 2), 1.0);
  EXPECT_EQ(check_isometric_covariance(F, e, e), 0.0);
}

TEST(IsometricCovariance, DepthZeroRejected) {
  const Quiver q({{1}});
  const FockSpace F(q, 0);
  EXPECT_THROW(check_isometric_covariance(F, CorrespondenceElement(q), CorrespondenceElement(q)),
               precondition_error);
}

TEST(Covariance, BimoduleActionsIntertwine) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Quiver q(oracle::random_counts(rng, n, 2));
    const FockSpace F(q, 3);
    const auto xi = random_element(rng, q);
    const auto D1 = random_diagonal(rng, n), D2 = random_diagonal(rng, n);
    const sparse_matrix lhs = diag_operator(F, D1).matrix * creation_operator(F, xi).matrix *
                              diag_operator(F, D2).matrix;
    const sparse_matrix rhs =
        creation_operator(F, right_action(left_action(D1, xi), D2)).matrix;
    EXPECT_LE(restricted_max_abs(F, lhs - rhs, 3), 1e-12);
  }
}

TEST(CornerShifts, LoopsAreOrthogonalIsometries) {
  const Quiver q({{2, 1, 0}, {1, 3, 0}, {1, 0, 0}});
  const FockSpace F(q, 4);
  for (std::size_t v : {0u, 1u}) {
    const auto r = check_corner_shifts(F, v);
    EXPECT_EQ(r.loops, q.count(v, v));
    EXPECT_EQ(r.isometry_deviation, 0.0);
    EXPECT_EQ(r.projection_deviation, 0.0);
    EXPECT_TRUE(r.deficient);
    EXPECT_TRUE(r.ok());
  }
}

TEST(FockSpace, DimensionIsSumOfMatrixPowers) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto C = oracle::random_counts(rng, 1 + trial % 3, 2);
    std::size_t expect = 0;
    for (std::size_t k = 0; k <= 4; ++k) expect += oracle::power_entry_sum(C, k);
    EXPECT_EQ(FockSpace(Quiver(C), 4).dimension(), expect);
  }
}
