#include <gtest/gtest.h>

#include <crossmetric/crossmetric.hpp>

namespace crossmetric {
namespace {

TEST(Length, TorusValuesAndGrading) {
  auto z2 = GroupModel::free_abelian(2);
  const auto l = MatrixLengthFunction::torus_z2(z2);
  EXPECT_EQ(l.parity(), 0);
  ASSERT_TRUE(l.grading());
  const ComplexMatrix& gam = *l.grading();
  for (const auto& g : z2->ball(4).elements) {
    const ComplexMatrix v = l(g);
    EXPECT_TRUE(is_hermitian(v));
    EXPECT_LE(max_abs(gam * v + v * gam), 1e-15);
    const double n = static_cast<double>(g.coords()[0]), m = static_cast<double>(g.coords()[1]);
    EXPECT_NEAR(min_singular_value(v), std::hypot(n, m), 1e-12);
  }
}

TEST(Length, WordLengthIsScalar) {
  auto h = GroupModel::heisenberg3();
  const auto l = MatrixLengthFunction::word(h);
  EXPECT_EQ(l.parity(), 1);
  EXPECT_EQ(l(h->element({0, 0, 1}))(0, 0), Complex(4.0));
}

TEST(Length, PhiIsBoundedByGeneratorLength) {
  // For the word length, ||φ_g(s)|| <= |g| by the triangle inequality.
  auto z2 = GroupModel::free_abelian(2);
  const auto l = MatrixLengthFunction::word(z2);
  for (const auto& g : z2->ball(2).elements) {
    EXPECT_LE(l.phi_sup(g, 5), static_cast<double>(z2->word_length(g)) + 1e-12);
  }
}

TEST(Length, AxiomsHold) {
  auto z2 = GroupModel::free_abelian(2);
  EXPECT_TRUE(MatrixLengthFunction::torus_z2(z2).check_axioms(4).pass);
  EXPECT_TRUE(MatrixLengthFunction::word(GroupModel::heisenberg3()).check_axioms(3).pass);
}

TEST(Length, Properness) {
  const auto p = MatrixLengthFunction::word(GroupModel::free_abelian(1)).properness_profile(5);
  EXPECT_TRUE(p.diverging);
  EXPECT_FALSE(p.finite_group);
  const auto c = MatrixLengthFunction::word(GroupModel::cyclic(3)).properness_profile(4);
  EXPECT_TRUE(c.finite_group);
}

TEST(Length, TorusNeedsZ2) {
  EXPECT_THROW(MatrixLengthFunction::torus_z2(GroupModel::free_abelian(1)), ValidationError);
}

TEST(Length, TabulatedStrictAndExtended) {
  auto z = GroupModel::free_abelian(1);
  std::unordered_map<GroupElement, ComplexMatrix, GroupElementHash> table;
  for (std::int64_t k = -2; k <= 2; ++k) {
    table.emplace(z->element({k}), ComplexMatrix::Constant(1, 1, static_cast<double>(std::abs(k))));
  }
  const auto strict = MatrixLengthFunction::tabulated(z, table);
  EXPECT_EQ(strict(z->element({2}))(0, 0), Complex(2.0));
  EXPECT_THROW(strict(z->element({3})), PreconditionError);
  const auto ext =
      MatrixLengthFunction::tabulated(z, table, std::nullopt, TabulatedExtension::WordScaled);
  EXPECT_EQ(ext(z->element({-5}))(0, 0), Complex(5.0));
}

TEST(Length, RejectsBadGrading) {
  auto z = GroupModel::free_abelian(1);
  std::unordered_map<GroupElement, ComplexMatrix, GroupElementHash> table;
  table.emplace(z->identity(), ComplexMatrix::Zero(2, 2));
  EXPECT_THROW(MatrixLengthFunction::tabulated(z, table, ComplexMatrix::Identity(2, 2) * 2.0),
               ValidationError);
}

}  // namespace
}  // namespace crossmetric
