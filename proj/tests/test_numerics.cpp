#include <gtest/gtest.h>

#include <crossmetric/crossmetric.hpp>

namespace crossmetric {
namespace {

ComplexMatrix random_matrix(Rng& rng, Eigen::Index r, Eigen::Index c) {
  ComplexMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = complex_uniform(rng);
  return m;
}

TEST(Numerics, SpectralNormMatchesSvd) {
  Rng rng(11);
  for (Eigen::Index dim : {1, 5, 40, 90, 150}) {
    const ComplexMatrix m = random_matrix(rng, dim, dim + 3);
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    EXPECT_NEAR(spectral_norm(m), svd.singularValues()(0), 1e-10 * svd.singularValues()(0));
  }
}

TEST(Numerics, SpectralNormIsDeterministic) {
  Rng rng(3);
  const ComplexMatrix m = random_matrix(rng, 120, 120);
  EXPECT_EQ(spectral_norm(m), spectral_norm(m));
}

TEST(Numerics, ZeroAndEmpty) {
  EXPECT_EQ(spectral_norm(ComplexMatrix::Zero(4, 4)), 0.0);
  EXPECT_EQ(spectral_norm(ComplexMatrix(0, 0)), 0.0);
}

TEST(Numerics, RejectsNonFinite) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(spectral_norm(m), ValidationError);
}

TEST(Numerics, HermitianEigs) {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  const auto ev = hermitian_eigs(m);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], -1.0, 1e-14);
  EXPECT_NEAR(ev[1], 1.0, 1e-14);
  m(0, 1) = 2.0;
  EXPECT_THROW(hermitian_eigs(m), ValidationError);
}

TEST(Numerics, TopSingularSpaceDegenerate) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 3);
  m(0, 0) = 2.0;
  m(1, 1) = Complex(0, 2.0);
  m(2, 2) = 1.0;
  const TopSingularSpace top = top_singular_space(m);
  EXPECT_NEAR(top.value, 2.0, 1e-14);
  ASSERT_EQ(top.left.size(), 2u);
  for (std::size_t i = 0; i < top.left.size(); ++i) {
    EXPECT_NEAR((m * top.right[i] - top.value * top.left[i]).norm(), 0.0, 1e-12);
  }
}

TEST(Numerics, TopSingularSpaceSatisfiesSvdRelation) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix m = random_matrix(rng, 6 + trial, 9 - trial % 4);
    const TopSingularSpace top = top_singular_space(m);
    ASSERT_FALSE(top.left.empty());
    EXPECT_NEAR(top.value, spectral_norm(m), 1e-10);
    EXPECT_NEAR((m.adjoint() * top.left[0] - top.value * top.right[0]).norm(), 0.0, 1e-9);
  }
}

TEST(Numerics, KronAndRank) {
  const ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  ComplexMatrix b(1, 2);
  b << 1, 2;
  const ComplexMatrix k = kron(a, b);
  EXPECT_EQ(k.rows(), 2);
  EXPECT_EQ(k.cols(), 4);
  EXPECT_EQ(k(1, 3), Complex(2.0));
  RealMatrix r(3, 3);
  r << 1, 2, 3, 2, 4, 6, 0, 0, 1;
  EXPECT_EQ(numerical_rank(r, 1e-12), 2);
}

TEST(Numerics, MinSingularValue) {
  ComplexMatrix m = ComplexMatrix::Identity(3, 3);
  m(2, 2) = 0.25;
  EXPECT_NEAR(min_singular_value(m), 0.25, 1e-15);
}

}  // namespace
}  // namespace crossmetric
