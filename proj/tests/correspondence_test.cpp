#include <gtest/gtest.h>

#include "quiver/correspondence.hpp"
#include "test_util.hpp"

using namespace quiver;
using testutil::random_diagonal;
using testutil::random_element;

namespace {

// The witness element with xi_ii = lambda/|lambda|, xi_ij = gamma/|gamma|.
CorrespondenceElement witness(const Quiver& q, std::size_t i, std::size_t j,
                              const cvector& lambda, const cvector& gamma) {
  CorrespondenceElement xi(q);
  xi.set_block(i, i, lambda / lambda.norm());
  xi.set_block(i, j, gamma / gamma.norm());
  return xi;
}

}  // namespace

TEST(InnerProduct, UnitVectorNorm) {
  const Quiver q({{2, 0, 0}, {0, 1, 0}, {1, 0, 0}});
  CorrespondenceElement xi(q);
  xi.set_block(0, 0, (cvector(2) << 0.6, 0.8).finished());
  const auto d = inner_product(xi, xi);
  EXPECT_NEAR(std::abs(d[0] - 1.0), 0.0, 1e-15);
  EXPECT_EQ(d[1], complex{});
  EXPECT_EQ(d[2], complex{});
}

TEST(InnerProduct, Orthogonal) {
  const Quiver q({{2}});
  CorrespondenceElement xi(q), eta(q);
  xi.set_block(0, 0, (cvector(2) << 1, 0).finished());
  eta.set_block(0, 0, (cvector(2) << 0, 1).finished());
  EXPECT_EQ(inner_product(xi, eta)[0], complex{});
}

TEST(InnerProduct, ConjugateLinearInFirstSlot) {
  const Quiver q({{1}});
  CorrespondenceElement xi(q), eta(q);
  xi.set_block(0, 0, (cvector(1) << complex(0, 1)).finished());
  eta.set_block(0, 0, (cvector(1) << 1.0).finished());
  EXPECT_EQ(inner_product(xi, eta)[0], complex(0, -1));
  EXPECT_EQ(inner_product(eta, xi)[0], complex(0, 1));
}

TEST(InnerProduct, WitnessElementHasUnitColumns) {
  const Quiver q({{2, 1, 0}, {0, 1, 0}, {0, 0, 0}});
  const cvector lambda = (cvector(2) << 0.3, complex(0, 0.4)).finished();
  const cvector gamma = (cvector(1) << 0.7).finished();
  const auto xi = witness(q, 0, 1, lambda, gamma);
  const auto d = inner_product(xi, xi);
  EXPECT_NEAR(std::abs(d[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d[1] - 1.0), 0.0, 1e-15);
  EXPECT_EQ(d[2], complex{});
  EXPECT_NEAR(element_norm(xi), 1.0, 1e-15);
}

TEST(InnerProduct, ShapeMismatch) {
  CorrespondenceElement a(Quiver({{1}})), b(Quiver({{2}}));
  EXPECT_THROW(inner_product(a, b), shape_error);
  EXPECT_THROW(a.set_block(0, 0, cvector(3)), shape_error);
}

TEST(LeftAction, Identity) {
  std::mt19937_64 rng(1);
  const Quiver q({{1, 2}, {1, 0}});
  const auto xi = random_element(rng, q);
  const auto out = left_action(DiagonalElement::identity(2), xi);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(out.block(i, j), xi.block(i, j));
}

TEST(LeftAction, IdempotentSelectsRow) {
  std::mt19937_64 rng(2);
  const Quiver q({{1, 2}, {1, 3}});
  const auto xi = random_element(rng, q);
  const auto out = left_action(DiagonalElement::idempotent(2, 0), xi);
  EXPECT_EQ(out.block(0, 0), xi.block(0, 0));
  EXPECT_EQ(out.block(0, 1), xi.block(0, 1));
  EXPECT_TRUE(out.block(1, 0).isZero(0.0));
  EXPECT_TRUE(out.block(1, 1).isZero(0.0));
}

TEST(LeftAction, RowIndexGoverns) {
  const Quiver q({{0, 1}, {0, 0}});
  CorrespondenceElement xi(q);
  xi.set_block(0, 1, (cvector(1) << 1.0).finished());
  const DiagonalElement d((cvector(2) << 2.0, 3.0).finished());
  EXPECT_EQ(left_action(d, xi).block(0, 1)(0), complex(2.0));
  EXPECT_EQ(right_action(xi, d).block(0, 1)(0), complex(3.0));
}

TEST(RightAction, IdentityAndIdempotent) {
  std::mt19937_64 rng(3);
  const Quiver q({{1, 2}, {1, 3}});
  const auto xi = random_element(rng, q);
  const auto same = right_action(xi, DiagonalElement::identity(2));
  EXPECT_EQ(same.block(1, 0), xi.block(1, 0));
  const auto out = right_action(xi, DiagonalElement::idempotent(2, 0));
  EXPECT_EQ(out.block(0, 0), xi.block(0, 0));
  EXPECT_EQ(out.block(1, 0), xi.block(1, 0));
  EXPECT_TRUE(out.block(0, 1).isZero(0.0));
  EXPECT_TRUE(out.block(1, 1).isZero(0.0));
}

TEST(Actions, ShapeMismatch) {
  CorrespondenceElement xi(Quiver({{1}}));
  EXPECT_THROW(left_action(DiagonalElement::identity(2), xi), shape_error);
  EXPECT_THROW(right_action(xi, DiagonalElement::identity(2)), shape_error);
}

TEST(ElementNorm, BasisArrowIsOne) {
  const Quiver q({{1, 2}, {0, 1}});
  for (const auto& a : arrows(q)) EXPECT_EQ(element_norm(CorrespondenceElement::basis(q, a)), 1.0);
}

TEST(ElementNorm, MaxOverColumns) {
  // Columns: <xi,xi>_1 = 9, <xi,xi>_2 = 16.
  const Quiver q({{1, 1}, {0, 0}});
  CorrespondenceElement xi(q);
  xi.set_block(0, 0, (cvector(1) << 3.0).finished());
  xi.set_block(0, 1, (cvector(1) << 4.0).finished());
  EXPECT_EQ(element_norm(xi), 4.0);
}

TEST(TensorPowerBasis, FiltersByLength) {
  const Quiver q({{2}});
  EXPECT_EQ(tensor_power_basis(q, 0).size(), 1u);
  EXPECT_EQ(tensor_power_basis(q, 1).size(), 2u);
  EXPECT_EQ(tensor_power_basis(q, 3).size(), 8u);
  for (const auto& p : tensor_power_basis(q, 3)) EXPECT_EQ(p.length(), 3u);
  const Quiver chain({{0, 1}, {0, 0}});
  EXPECT_EQ(tensor_power_basis(chain, 2).size(), 0u);
}

class CorrespondenceProperties : public ::testing::TestWithParam<int> {};

TEST_P(CorrespondenceProperties, ModuleIdentities) {
  std::mt19937_64 rng(100 + GetParam());
  const std::size_t n = 1 + GetParam() % 3;
  std::uniform_int_distribution<std::size_t> c(0, 3);
  Quiver q(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q.set_count(i, j, c(rng));
  const auto xi = random_element(rng, q);
  const auto eta = random_element(rng, q);
  const auto D = random_diagonal(rng, n);

  const auto base = inner_product(xi, eta);
  // <xi, eta D> = <xi, eta> D
  const auto right = inner_product(xi, right_action(eta, D));
  // <xi, phi(D) eta> = <phi(D)* xi, eta>
  const auto l1 = inner_product(xi, left_action(D, eta));
  const auto l2 = inner_product(left_action(D.adjoint(), xi), eta);
  const auto self = inner_product(xi, xi);
  for (std::size_t j = 0; j < n; ++j) {
    EXPECT_LE(std::abs(right[j] - base[j] * D[j]), 1e-12 * (1 + std::abs(base[j] * D[j])));
    EXPECT_LE(std::abs(l1[j] - l2[j]), 1e-12 * (1 + std::abs(l1[j])));
    EXPECT_GE(self[j].real(), 0.0);
    EXPECT_EQ(self[j].imag(), 0.0);
    // Cauchy-Schwarz per column.
    double cx = 0, ce = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cx += xi.block(i, j).squaredNorm();
      ce += eta.block(i, j).squaredNorm();
    }
    EXPECT_LE(std::abs(base[j]), std::sqrt(cx * ce) + 1e-12);
  }
  // Positivity: zero iff xi = 0.
  const auto zero = inner_product(CorrespondenceElement(q), CorrespondenceElement(q));
  for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(zero[j], complex{});
  if (!xi.is_zero()) {
    EXPECT_GT(element_norm(xi), 0.0);
  }
}

INSTANTIATE_TEST_SUITE_P(Random, CorrespondenceProperties, ::testing::Range(0, 25));
