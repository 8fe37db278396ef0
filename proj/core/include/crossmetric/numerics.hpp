#pragma once

// Dense complex linear algebra kernels shared by every module.
//
// All norms are computed on finite compressions, so the routines here only
// ever see dense matrices of moderate size. The spectral norm uses a seeded
// power iteration on M^* M and falls back to a dense Hermitian eigensolver
// for small inputs or when the iteration stalls.

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace crossmetric {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

struct NormOptions {
  /// Stop when ||M^*M v - theta v|| < tol * theta.
  double tol = 1e-12;
  std::uint64_t seed = 0x243f6a8885a308d3ULL;
  int max_iterations = 3000;
  /// Below this dimension the dense eigensolver is used directly.
  Eigen::Index dense_below = 64;
  /// Dense fallback after non-convergence is only attempted up to this size.
  Eigen::Index dense_limit = 2000;
};

struct NormResult {
  double value = 0.0;
  bool converged = true;
  int iterations = 0;
  bool dense = false;
};

/// Largest singular value with convergence diagnostics.
NormResult spectral_norm_detailed(const ComplexMatrix& m, const NormOptions& options = {});

/// Largest singular value. Zero-sized matrices have norm 0.
double spectral_norm(const ComplexMatrix& m, const NormOptions& options = {});

/// Eigenvalues of a Hermitian matrix, sorted ascending.
/// Throws ValidationError if `m` is not Hermitian to `tol` (relative to its
/// largest entry, floored at 1).
std::vector<double> hermitian_eigs(const ComplexMatrix& m, double tol = 1e-12);

/// Orthonormal bases of the left/right singular subspaces belonging to the
/// largest singular value. Singular values within `rel_tol * sigma_max` of the
/// top are treated as degenerate with it.
struct TopSingularSpace {
  double value = 0.0;
  std::vector<ComplexVector> left;
  std::vector<ComplexVector> right;
};
TopSingularSpace top_singular_space(const ComplexMatrix& m, double rel_tol = 1e-9);

double min_singular_value(const ComplexMatrix& m);

/// max_ij |M_ij - conj(M_ji)|.
double hermitian_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12);

double max_abs(const ComplexMatrix& m);

/// Throws ValidationError naming `what` if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, std::string_view what);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Rank of a real matrix, counting singular values above
/// rel_tol * max(1, sigma_max).
Eigen::Index numerical_rank(const RealMatrix& m, double rel_tol);

/// Real-linear embedding of a complex matrix: stacks Re and Im of the
/// column-major entries into one real vector.
RealVector realify(const ComplexMatrix& m);

}  // namespace crossmetric
