#include "crossmetric/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "crossmetric/errors.hpp"

namespace crossmetric {

namespace {

ComplexVector seeded_unit_vector(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Map raw 64-bit draws to [-1, 1) ourselves so the start vector does not
  // depend on the standard library's distribution implementation.
  auto draw = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
  };
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = draw();
    const double im = draw();
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

double dense_norm(const ComplexMatrix& m) {
  // Eigenvalues of the smaller Gram matrix; sigma_max^2 is the top one.
  const ComplexMatrix gram =
      m.rows() <= m.cols() ? ComplexMatrix(m * m.adjoint()) : ComplexMatrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
  const double top = solver.eigenvalues().maxCoeff();
  return std::sqrt(std::max(top, 0.0));
}

}  // namespace

NormResult spectral_norm_detailed(const ComplexMatrix& m, const NormOptions& options) {
  NormResult result;
  if (m.size() == 0) return result;
  require_finite(m, "spectral_norm input");
  if (options.tol <= 0.0) throw ValidationError("spectral_norm: tolerance must be positive");
  if (max_abs(m) == 0.0) return result;

  const Eigen::Index dim = std::max(m.rows(), m.cols());
  if (dim < options.dense_below) {
    result.value = dense_norm(m);
    result.dense = true;
    return result;
  }

  // When the dense fallback is available, stop iterating once the iterations
  // cost about as much as the dense solve would.
  int budget = options.max_iterations;
  if (dim <= options.dense_limit) {
    budget = std::min<int>(budget, std::max<int>(40, static_cast<int>(dim / 4)));
  }
  ComplexVector v = seeded_unit_vector(m.cols(), options.seed);
  double theta = 0.0;
  for (int it = 1; it <= budget; ++it) {
    const ComplexVector mv = m * v;
    const ComplexVector gv = m.adjoint() * mv;
    theta = mv.squaredNorm();
    result.iterations = it;
    if (theta == 0.0) {
      // Start vector landed in the kernel; reseed deterministically.
      v = seeded_unit_vector(m.cols(), options.seed + static_cast<std::uint64_t>(it));
      continue;
    }
    const double residual = (gv - theta * v).norm();
    if (residual < options.tol * theta) {
      result.value = std::sqrt(theta);
      result.converged = true;
      return result;
    }
    v = gv / gv.norm();
  }

  if (dim <= options.dense_limit) {
    result.value = dense_norm(m);
    result.dense = true;
    result.converged = true;
  } else {
    result.value = std::sqrt(theta);
    result.converged = false;
  }
  return result;
}

double spectral_norm(const ComplexMatrix& m, const NormOptions& options) {
  return spectral_norm_detailed(m, options).value;
}

std::vector<double> hermitian_eigs(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw ValidationError("hermitian_eigs: matrix is not square");
  if (m.size() == 0) return {};
  require_finite(m, "hermitian_eigs input");
  if (!is_hermitian(m, tol)) throw ValidationError("hermitian_eigs: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  const RealVector& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

TopSingularSpace top_singular_space(const ComplexMatrix& m, double rel_tol) {
  TopSingularSpace out;
  if (m.size() == 0) return out;
  // Eigenvectors of the smaller Gram matrix; the other side is M v / σ.
  const bool tall = m.rows() >= m.cols();
  const ComplexMatrix gram = tall ? ComplexMatrix(m.adjoint() * m) : ComplexMatrix(m * m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram);
  const RealVector& lam = es.eigenvalues();
  const Eigen::Index top = lam.size() - 1;
  if (!(lam(top) > 0.0)) return out;
  out.value = std::sqrt(lam(top));
  for (Eigen::Index i = top; i >= 0; --i) {
    if (lam(i) < lam(top) * (1.0 - rel_tol) * (1.0 - rel_tol)) break;
    const ComplexVector v = es.eigenvectors().col(i);
    const ComplexVector w = (tall ? ComplexVector(m * v) : ComplexVector(m.adjoint() * v)) / out.value;
    out.left.push_back(tall ? w : v);
    out.right.push_back(tall ? v : w);
  }
  return out;
}

double min_singular_value(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().minCoeff();
}

double hermitian_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return hermitian_defect(m) <= tol * std::max(1.0, max_abs(m));
}

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

void require_finite(const ComplexMatrix& m, std::string_view what) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ValidationError(std::string(what) + ": non-finite entry");
      }
    }
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::Index numerical_rank(const RealMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const RealVector& s = svd.singularValues();
  const double threshold = rel_tol * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) ++rank;
  }
  return rank;
}

RealVector realify(const ComplexMatrix& m) {
  RealVector out(2 * m.size());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out(k++) = m(i, j).real();
      out(k++) = m(i, j).imag();
    }
  }
  return out;
}

}  // namespace crossmetric
