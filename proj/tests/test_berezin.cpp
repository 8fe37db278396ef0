#include <gtest/gtest.h>

#include "support.hpp"

namespace crossmetric {
namespace {

TEST(Berezin, CoefficientMatchesVectorState) {
  Rng rng(7);
  for (auto g : {GroupModel::free_abelian(1), GroupModel::free_abelian(2), GroupModel::heisenberg3()}) {
    for (int trial = 0; trial < 6; ++trial) {
      const Ball f = g->ball(uniform_index(rng, 3));
      const Ball reach = g->ball(2);
      const GroupElement& h = reach.elements[uniform_index(rng, reach.size())];
      EXPECT_NEAR(chi_coefficient(*g, f, h), chi_vector_state(g, f, h), 1e-12);
    }
  }
}

TEST(Berezin, IsUnitalAndPositiveOnCoefficients) {
  auto ctx = test::z2_swap();
  const Ball f = ctx->group().ball(2);
  EXPECT_LE(berezin(f, ctx->one()).distance(ctx->one()), 0.0);
  Rng rng(2);
  const CrossedElement z = random_element(ctx, 2, 4, rng);
  const CrossedElement b = berezin(f, z);
  for (const auto& [g, x] : b.coefficients()) {
    const double c = chi_coefficient(ctx->group(), f, g);
    EXPECT_GE(c, 0.0);
    EXPECT_LE(max_abs(x - c * z.coefficient(g)), 1e-15);
  }
}

TEST(Berezin, ContractionPerRadius) {
  for (auto ctx : {test::z2_matrix(), test::z_three_points()}) {
    const CrossedGeometry geo(ctx, MatrixLengthFunction::word(ctx->group_ptr()));
    Rng rng(31);
    for (int trial = 0; trial < 6; ++trial) {
      const CrossedElement z = random_element(ctx, 1 + trial % 2, 3, rng);
      for (std::size_t R : {2u, 3u}) {
        EXPECT_TRUE(contraction_check(geo, ctx->group().ball(1), z, R).pass);
      }
    }
  }
}

TEST(Berezin, ApproximationIdentity) {
  auto ctx = test::z2_swap();
  Rng rng(12);
  for (int trial = 0; trial < 8; ++trial) {
    const CrossedElement z = random_element(ctx, 2, 4, rng);
    const auto eta = VectorFunctional::random(ctx, 2, rng);
    EXPECT_TRUE(approximation_identity_check(eta, ctx->group().ball(trial % 3), z).pass);
  }
}

TEST(Berezin, SliceContraction) {
  auto ctx = test::z_three_points();
  const CrossedGeometry geo(ctx, MatrixLengthFunction::word(ctx->group_ptr()));
  Rng rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    const CrossedElement z = random_element(ctx, 1, 3, rng);
    const auto eta = VectorFunctional::random(ctx, 1, rng);
    EXPECT_TRUE(slice_contraction_check(geo, eta, z, 2, 4).pass);
  }
}

TEST(Berezin, ApproximationBound) {
  auto ctx = test::z2_swap();
  const CrossedGeometry geo(ctx, MatrixLengthFunction::torus_z2(ctx->group_ptr()));
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const CrossedElement z = random_element(ctx, 1, 3, rng);
    EXPECT_TRUE(approximation_bound_check(geo, ctx->group().ball(2), z, 1, {2, 3}).pass);
  }
  EXPECT_THROW(approximation_bound_check(geo, ctx->group().ball(1),
                                         ctx->lambda(ctx->group().element({2, 0})), 1, {2}),
               PreconditionError);
}

TEST(Berezin, TraceVersusCounitClosedForm) {
  const auto l = MatrixLengthFunction::word(GroupModel::free_abelian(1));
  double sum = 0.0;
  for (std::size_t r = 1; r <= 6; ++r) {
    sum += 1.0 / static_cast<double>(r * r);
    EXPECT_NEAR(mk_upper(l, trace_coefficients(), r), std::sqrt(2.0 * sum), 1e-12);
  }
}

TEST(Berezin, FolnerTableOnZ) {
  const auto l = MatrixLengthFunction::word(GroupModel::free_abelian(1));
  const FolnerTable t = folner_convergence(l, 3, 1, 8);
  EXPECT_TRUE(t.strictly_decreasing);
  for (const auto& row : t.rows) {
    EXPECT_NEAR(row.rho_hat, std::sqrt(6.0) / static_cast<double>(2 * row.n + 1), 1e-14);
  }
}

TEST(Berezin, SingularLengthIsRejected) {
  auto z = GroupModel::free_abelian(1);
  std::unordered_map<GroupElement, ComplexMatrix, GroupElementHash> table;
  for (std::int64_t k = -1; k <= 1; ++k) table.emplace(z->element({k}), ComplexMatrix::Zero(2, 2));
  const auto l = MatrixLengthFunction::tabulated(z, table);
  EXPECT_THROW(mk_upper(l, trace_coefficients(), 1), PreconditionError);
}

TEST(Berezin, StatesOnScalars) {
  auto z = GroupModel::free_abelian(1);
  auto ctx = CrossedProduct::group_algebra(z);
  const CrossedElement x = ctx->one().scaled(3.0) + ctx->lambda(z->element({1}));
  EXPECT_EQ(StateSpec::counit()(x), Complex(4.0));
  EXPECT_EQ(StateSpec::trace()(x), Complex(3.0));
  const auto f = std::make_shared<const Ball>(z->ball(1));
  EXPECT_NEAR(StateSpec::folner(z, f)(x).real(), 3.0 + 2.0 / 3.0, 1e-15);
}

}  // namespace
}  // namespace crossmetric
