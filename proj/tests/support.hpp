#pragma once

#include <memory>

#include <crossmetric/crossmetric.hpp>

namespace crossmetric::test {

inline RealMatrix two_points(double d) {
  RealMatrix m(2, 2);
  m << 0.0, d, d, 0.0;
  return m;
}

inline RealMatrix three_points() {
  RealMatrix m(3, 3);
  m << 0.0, 1.0, 2.0, 1.0, 0.0, 1.5, 2.0, 1.5, 0.0;
  return m;
}

/// Z^2 acting on the two-point space by swaps.
inline std::shared_ptr<const CrossedProduct> z2_swap(bool graded = false) {
  auto g = GroupModel::free_abelian(2);
  FiniteSpectralTriple t = FiniteSpectralTriple::lip_triple(two_points(1.0));
  if (!graded) {
    GroupAction a = GroupAction::permutation(g, t, {{1, 0}, {1, 0}});
    return CrossedProduct::create(g, std::move(t), std::move(a));
  }
  ComplexMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const ComplexMatrix u = kron(swap, ComplexMatrix::Identity(2, 2));
  FiniteSpectralTriple d = t.graded_double();
  GroupAction a = GroupAction::inner(g, {u, u});
  return CrossedProduct::create(g, std::move(d), std::move(a));
}

/// Z^2 acting on M_2 by commuting diagonal unitaries.
inline std::shared_ptr<const CrossedProduct> z2_matrix() {
  auto g = GroupModel::free_abelian(2);
  ComplexMatrix u1 = ComplexMatrix::Identity(2, 2), u2 = ComplexMatrix::Identity(2, 2);
  u1(1, 1) = -1.0;
  u2(1, 1) = Complex(0.0, 1.0);
  return CrossedProduct::create(g, FiniteSpectralTriple::matrix_algebra(2),
                                GroupAction::inner(g, {u1, u2}));
}

/// Z acting on the three-point space by a cyclic shift.
inline std::shared_ptr<const CrossedProduct> z_three_points() {
  auto g = GroupModel::free_abelian(1);
  FiniteSpectralTriple t = FiniteSpectralTriple::lip_triple(three_points());
  GroupAction a = GroupAction::permutation(g, t, {{1, 2, 0}});
  return CrossedProduct::create(g, std::move(t), std::move(a));
}

}  // namespace crossmetric::test
