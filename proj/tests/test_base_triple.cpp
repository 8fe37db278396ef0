#include <gtest/gtest.h>

#include "support.hpp"

namespace crossmetric {
namespace {

using test::three_points;
using test::two_points;

// Lipschitz constant of a function on a finite metric space.
double lip_oracle(const RealMatrix& d, const std::vector<double>& f) {
  double best = 0.0;
  for (Eigen::Index x = 0; x < d.rows(); ++x)
    for (Eigen::Index y = x + 1; y < d.rows(); ++y)
      best = std::max(best, std::abs(f[static_cast<std::size_t>(x)] - f[static_cast<std::size_t>(y)]) / d(x, y));
  return best;
}

TEST(BaseTriple, LipTripleRecoversLipschitzConstant) {
  const RealMatrix d = three_points();
  const auto t = FiniteSpectralTriple::lip_triple(d);
  Rng rng(4);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> f = {uniform_symmetric(rng), uniform_symmetric(rng), uniform_symmetric(rng)};
    EXPECT_NEAR(t.lipschitz(t.function(f)), lip_oracle(d, f), 1e-12);
  }
}

TEST(BaseTriple, PointVectorsEvaluate) {
  const auto t = FiniteSpectralTriple::lip_triple(three_points());
  const std::vector<double> f = {0.5, -1.0, 2.0};
  const ComplexMatrix a = t.function(f);
  for (std::size_t x = 0; x < 3; ++x) {
    const ComplexVector h = t.point_vector(x);
    EXPECT_NEAR(h.dot(a * h).real(), f[x], 1e-14);
  }
}

TEST(BaseTriple, RejectsNonMetrics) {
  RealMatrix d = three_points();
  d(0, 2) = d(2, 0) = 5.0;
  EXPECT_THROW(FiniteSpectralTriple::lip_triple(d), ValidationError);
  RealMatrix asym = two_points(1.0);
  asym(0, 1) = 2.0;
  EXPECT_THROW(FiniteSpectralTriple::lip_triple(asym), ValidationError);
  EXPECT_THROW(FiniteSpectralTriple::lip_triple(two_points(0.0)), ValidationError);
}

TEST(BaseTriple, OnePointSpace) {
  RealMatrix d = RealMatrix::Zero(1, 1);
  const auto t = FiniteSpectralTriple::lip_triple(d);
  EXPECT_EQ(t.dim(), 1);
  EXPECT_EQ(t.lipschitz(ComplexMatrix::Identity(1, 1)), 0.0);
}

TEST(BaseTriple, MatrixAlgebraHasLargeKernel) {
  // Every element commuting with D is in the kernel of L_D.
  const auto t = FiniteSpectralTriple::matrix_algebra(3);
  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  diag(0, 0) = 1.0;
  diag(2, 2) = -4.0;
  EXPECT_EQ(t.lipschitz(diag), 0.0);
  ComplexMatrix off = ComplexMatrix::Zero(3, 3);
  off(0, 1) = 1.0;
  EXPECT_GT(t.lipschitz(off), 0.0);
}

TEST(BaseTriple, GradedDouble) {
  const auto t = FiniteSpectralTriple::lip_triple(two_points(2.0)).graded_double();
  ASSERT_TRUE(t.grading());
  const ComplexMatrix& g = *t.grading();
  EXPECT_LE(max_abs(g * t.dirac() + t.dirac() * g), 1e-15);
  for (const auto& a : t.algebra_basis()) EXPECT_LE(max_abs(g * a - a * g), 1e-15);
  EXPECT_EQ(t.parity(), 0);
}

TEST(BaseTriple, InvalidDirac) {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 1) = 1.0;
  EXPECT_THROW(FiniteSpectralTriple::matrix_algebra(2, d), ValidationError);
}

TEST(Action, PermutationIsIsometricAutomorphism) {
  auto ctx = test::z_three_points();
  const ActionReport rep = ctx->action().check(ctx->triple(), 3, 9);
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(rep.preserves_algebra);
}

TEST(Action, SwapIsEquicontinuous) {
  auto ctx = test::z2_swap();
  Rng rng(2);
  for (int k = 0; k < 5; ++k) {
    const ComplexMatrix a = ctx->triple().sample_element(rng);
    EXPECT_NEAR(equicontinuity_sup(ctx->triple(), ctx->action(), a, 4),
                ctx->triple().lipschitz(a), 1e-12);
  }
}

TEST(Action, InnerRejectsNonCommuting) {
  auto z2 = GroupModel::free_abelian(2);
  ComplexMatrix x(2, 2), zm(2, 2);
  x << 0, 1, 1, 0;
  zm << 1, 0, 0, -1;
  EXPECT_THROW(GroupAction::inner(z2, {x, zm}), ValidationError);
  EXPECT_THROW(GroupAction::inner(z2, {x}), ValidationError);
}

TEST(Action, InnerHomomorphism) {
  auto ctx = test::z2_matrix();
  const auto& g = ctx->group();
  const GroupElement a = g.element({2, -1}), b = g.element({-3, 5});
  const ComplexMatrix lhs = ctx->action().unitary(g.multiply(a, b));
  const ComplexMatrix rhs = ctx->action().unitary(a) * ctx->action().unitary(b);
  EXPECT_LE(max_abs(lhs - rhs), 1e-14);
}

TEST(OperatorSystem, Validation) {
  const auto t = FiniteSpectralTriple::lip_triple(three_points());
  OperatorSystemSpec ok{{t.function(std::vector<double>{1, 1, 1}), t.function(std::vector<double>{1, 0, 0})}, false};
  EXPECT_TRUE(validate_operator_system(ok, t).pass);
  OperatorSystemSpec no_unit{{t.function(std::vector<double>{1, 0, 0})}, false};
  EXPECT_FALSE(validate_operator_system(no_unit, t).pass);
}

}  // namespace
}  // namespace crossmetric
