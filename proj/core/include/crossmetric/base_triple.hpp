#pragma once

// Finite-dimensional base spectral triples (A, H, D), group actions on them
// and the commutator seminorm L_D(a) = ||[D, a]||.
//
// Algebra elements are stored in their defining representation, i.e. as
// dim(H) x dim(H) complex matrices. Every shipped action is spatially
// implemented, α_g(a) = U_g a U_g*, by a unitary representation of the
// abelianization of the group.

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crossmetric/group.hpp"
#include "crossmetric/numerics.hpp"
#include "crossmetric/random.hpp"

namespace crossmetric {

class FiniteSpectralTriple {
 public:
  /// Validates D = D*, the grading relations and closure of the algebra span.
  FiniteSpectralTriple(ComplexMatrix dirac, std::vector<ComplexMatrix> algebra_basis,
                       std::optional<ComplexMatrix> grading = std::nullopt,
                       std::string name = "custom");

  /// Commutative triple of a finite metric space: H = ⊕_{x<y} C², with
  /// D-block ρ(x,y)⁻¹ σ₁ and functions acting as diag(a(x), a(y)).
  /// `distance` must be a metric; a single point gives H = C, D = 0.
  static FiniteSpectralTriple lip_triple(const RealMatrix& distance);

  /// M_k acting on C^k with Dirac operator `dirac` (default diag(0, 1, ..., k-1)).
  static FiniteSpectralTriple matrix_algebra(Eigen::Index k,
                                             std::optional<ComplexMatrix> dirac = std::nullopt);

  /// Even triple (A, H ⊗ C², D ⊗ σ₁, γ = 1 ⊗ σ₃) built from an odd one.
  FiniteSpectralTriple graded_double() const;

  const std::string& name() const noexcept { return name_; }
  Eigen::Index dim() const noexcept { return dirac_.rows(); }
  int parity() const noexcept { return grading_ ? 0 : 1; }
  const ComplexMatrix& dirac() const noexcept { return dirac_; }
  const std::optional<ComplexMatrix>& grading() const noexcept { return grading_; }
  std::span<const ComplexMatrix> algebra_basis() const noexcept { return basis_; }

  /// d(a) = D a - a D.
  ComplexMatrix commutator(const ComplexMatrix& a) const;
  /// L_D(a) = ||d(a)||.
  double lipschitz(const ComplexMatrix& a) const;
  bool in_algebra(const ComplexMatrix& a, double tol = 1e-10) const;

  /// Number of points when the triple comes from a finite metric space.
  std::optional<std::size_t> point_count() const noexcept;
  /// The function with the given values, represented on H.
  ComplexMatrix function(std::span<const double> values) const;
  /// A unit vector h with <h, a h> = a(x) for every function a.
  ComplexVector point_vector(std::size_t x) const;
  /// Basis vector labels (point, partner point, copy) for metric-space triples.
  const std::vector<std::array<std::size_t, 3>>& site_labels() const noexcept { return labels_; }

  /// Random element of the algebra span with coefficients uniform in the unit square.
  ComplexMatrix sample_element(Rng& rng) const;

 private:
  std::string name_;
  ComplexMatrix dirac_;
  std::vector<ComplexMatrix> basis_;
  std::optional<ComplexMatrix> grading_;
  std::vector<ComplexMatrix> point_projections_;
  std::vector<std::array<std::size_t, 3>> labels_;
};

/// Returns true when `target` lies in the complex span of `basis`
/// (relative least-squares residual below tol).
bool span_contains(std::span<const ComplexMatrix> basis, const ComplexMatrix& target,
                   double tol = 1e-10);

struct ActionReport {
  double identity_defect = 0.0;
  double homomorphism_defect = 0.0;
  double multiplicativity_defect = 0.0;
  double adjoint_defect = 0.0;
  double unital_defect = 0.0;
  bool preserves_algebra = true;
  bool pass = true;
};

class GroupAction {
 public:
  enum class Kind { Trivial, Permutation, Inner };

  static GroupAction trivial(std::shared_ptr<const GroupModel> group, Eigen::Index dim);
  /// Permutation action on a metric-space triple; one permutation per
  /// abelianization generator, acting by a ↦ a ∘ σ⁻¹.
  static GroupAction permutation(std::shared_ptr<const GroupModel> group,
                                 const FiniteSpectralTriple& triple,
                                 const std::vector<std::vector<std::size_t>>& permutations);
  /// Ad(u_g) for commuting unitaries, one per abelianization generator.
  static GroupAction inner(std::shared_ptr<const GroupModel> group,
                           std::vector<ComplexMatrix> unitaries);

  Kind kind() const noexcept { return kind_; }
  const GroupModel& group() const noexcept { return *group_; }
  Eigen::Index dim() const noexcept { return dim_; }

  /// Implementing unitary U_g = Π_i U_i^{k_i} for abelianized coordinates k.
  ComplexMatrix unitary(const GroupElement& g) const;
  ComplexMatrix act(const GroupElement& g, const ComplexMatrix& a) const;

  /// Sampled homomorphism and *-automorphism checks over ball(radius).
  ActionReport check(const FiniteSpectralTriple& triple, std::size_t radius, std::uint64_t seed,
                     double tol = 1e-12) const;

 private:
  GroupAction(std::shared_ptr<const GroupModel> group, Kind kind,
              std::vector<ComplexMatrix> unitaries, Eigen::Index dim);

  std::shared_ptr<const GroupModel> group_;
  Kind kind_;
  std::vector<ComplexMatrix> unitaries_;
  Eigen::Index dim_;
};

/// max over g in ball(radius) of L_D(α_g(a)).
double equicontinuity_sup(const FiniteSpectralTriple& triple, const GroupAction& action,
                          const ComplexMatrix& a, std::size_t radius);

/// A unital *-invariant subspace of the algebra.
struct OperatorSystemSpec {
  std::vector<ComplexMatrix> basis;
  bool action_invariant = false;
};

struct OperatorSystemReport {
  bool contains_unit = false;
  bool adjoint_closed = false;
  bool inside_algebra = false;
  bool action_invariant = true;
  bool pass = false;
};

OperatorSystemReport validate_operator_system(const OperatorSystemSpec& spec,
                                              const FiniteSpectralTriple& triple,
                                              const GroupAction* action = nullptr);

}  // namespace crossmetric
