#pragma once

// Lower bounds for Monge-Kantorovič distances on finite-dimensional
// subsystems, and the compact-quantum-metric audit built on them.
//
// A FiniteSystem is a real vector space with a basis B_k of selfadjoint
// elements, a seminorm L(θ) = max_j ||Σ_k θ_k A_j(B_k)|| given by the images
// A_j(B_k), a normalizing functional σ and a list of named states recorded
// by their values on the basis.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crossmetric/berezin.hpp"

namespace crossmetric {

class MatrixSeminorm {
 public:
  /// images[j][k] = A_j(B_k); all images of one constituent share a shape.
  explicit MatrixSeminorm(std::vector<std::vector<ComplexMatrix>> images);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t constituents() const noexcept { return images_.size(); }
  ComplexMatrix combine(std::size_t j, const RealVector& theta) const;
  double operator()(const RealVector& theta) const;
  /// A subgradient at θ, averaged over the top singular space of the
  /// maximizing constituent (first maximizer on ties).
  RealVector subgradient(const RealVector& theta) const;
  /// Dimension of {θ : L(θ) = 0} within the column span of `restrict`
  /// (identity when omitted), by numerical rank at `tol`.
  std::size_t kernel_dimension(const std::optional<RealMatrix>& restrict = std::nullopt,
                               double tol = 1e-8) const;

 private:
  std::vector<std::vector<ComplexMatrix>> images_;
  std::size_t dimension_ = 0;
};

struct NamedState {
  std::string name;
  /// Real values φ(B_k) on the basis.
  RealVector values;
};

struct FiniteSystem {
  std::string name;
  std::vector<std::string> basis_labels;
  MatrixSeminorm seminorm;
  /// Normalization functional; the search space is {σ(θ) = 0}.
  RealVector sigma;
  std::vector<NamedState> states;
  /// Whether the seminorm is the exact one or a truncation lower bound.
  bool seminorm_exact = true;

  const NamedState& state(const std::string& name) const;
};

/// Selfadjoint scalar elements of CΓ supported in ball(r), with L_l
/// evaluated at truncation radius `radius`. States: counit, trace and the
/// Følner states for each n in `folner_radii`. σ is the trace.
FiniteSystem scalar_sector(const MatrixLengthFunction& length, std::size_t r, std::size_t radius,
                           const std::vector<std::size_t>& folner_radii = {});

/// The base algebra with L_D. States are point evaluations when the base is
/// a finite metric space, else the normalized trace and diagonal vector
/// states. σ is the first state. `span` restricts to an operator system.
FiniteSystem base_system(const FiniteSpectralTriple& triple,
                         const std::optional<std::vector<ComplexMatrix>>& span = std::nullopt);

/// Selfadjoint elements of A ⋊ Γ supported in ball(r) with L_∞ at truncation
/// radius `radius`. States are vector states at δ_e ⊗ (standard basis); σ is
/// the first of them.
FiniteSystem crossed_system(const CrossedGeometry& geometry, std::size_t r, std::size_t radius);

/// A selfadjoint real basis of the complex span of `elements`, in order.
std::vector<ComplexMatrix> selfadjoint_basis(const std::vector<ComplexMatrix>& elements,
                                             double tol = 1e-10);

struct MKOptions {
  std::size_t budget = 10000;
  std::size_t starts = 4;
  std::uint64_t seed = 0x5eed;
};

struct MKCertificate {
  double lower = 0.0;
  std::optional<double> upper;
  std::size_t radius = 0;
  /// Best value after each start.
  std::vector<double> trace;
  /// Maximizer rescaled to L(θ) = 1.
  RealVector argmax;
  bool seminorm_exact = true;
};

/// Certified lower bound on sup{(φ - ψ)(x) : L(x) <= 1, σ(x) = 0}: minimizes L
/// on the slice {(φ - ψ)(θ) = 1} by projected subgradient steps, which is the
/// ratio (φ - ψ)/L ascended along rays. Every iterate is feasible after
/// rescaling. Throws DegenerateSeminormError if L vanishes on a direction of
/// {σ = 0}.
MKCertificate mk_lower(const FiniteSystem& system, const std::string& phi,
                       const std::string& psi, const MKOptions& options = {});

struct CQMSReport {
  std::size_t kernel_dim = 0;
  std::optional<double> diameter_bound;
  /// Finite dimension makes the unit ball totally bounded.
  bool totally_bounded = true;
  bool pass = false;
};

/// kernel_dim over the whole system (expected 1), and when it is 1 the lower
/// bound max over state pairs of mk_lower / 2 for the constant C in
/// ||[x]|| <= C L(x).
CQMSReport cqms_finite_check(const FiniteSystem& system, const MKOptions& options = {});

}  // namespace crossmetric
