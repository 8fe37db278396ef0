#pragma once

// The algebraic crossed product A ⋊_alg Γ and its covariant representation
// on ℓ²(Γ) ⊗ C^n ⊗ H, compressed to word balls.
//
// A CrossedElement z = Σ_g π(x_g) λ_g is stored as its finitely supported
// coefficient map g ↦ x_g. The representation used throughout is
//   (π(x) λ_g ξ)(t) = α_{t⁻¹}(x) ξ(g⁻¹ t),
// so the (t, s) block of a truncation is I_n ⊗ α_{t⁻¹}(x_g) when t = g s.
// Basis vectors are ordered (site, length leg, H leg) with index
// (site * n + i) * m + j.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "crossmetric/base_triple.hpp"
#include "crossmetric/group.hpp"
#include "crossmetric/numerics.hpp"

namespace crossmetric {

class CrossedElement;

class CrossedProduct : public std::enable_shared_from_this<CrossedProduct> {
 public:
  static std::shared_ptr<const CrossedProduct> create(std::shared_ptr<const GroupModel> group,
                                                      FiniteSpectralTriple triple,
                                                      GroupAction action);
  /// CΓ: the one-point base with the trivial action.
  static std::shared_ptr<const CrossedProduct> group_algebra(
      std::shared_ptr<const GroupModel> group);

  const GroupModel& group() const noexcept { return *group_; }
  const std::shared_ptr<const GroupModel>& group_ptr() const noexcept { return group_; }
  const FiniteSpectralTriple& triple() const noexcept { return triple_; }
  const GroupAction& action() const noexcept { return action_; }
  /// dim H.
  Eigen::Index dim() const noexcept { return triple_.dim(); }

  CrossedElement zero() const;
  CrossedElement one() const;
  /// λ_g.
  CrossedElement lambda(const GroupElement& g) const;
  /// π(x) λ_g.
  CrossedElement monomial(const ComplexMatrix& x, const GroupElement& g) const;
  CrossedElement element(std::map<GroupElement, ComplexMatrix> coefficients) const;

  /// α_{t⁻¹} implemented as conjugation by the returned unitaries, one per
  /// ball site, in ball order.
  std::vector<ComplexMatrix> site_unitaries(const Ball& ball) const;

 private:
  CrossedProduct(std::shared_ptr<const GroupModel> group, FiniteSpectralTriple triple,
                 GroupAction action);

  std::shared_ptr<const GroupModel> group_;
  FiniteSpectralTriple triple_;
  GroupAction action_;
};

class CrossedElement {
 public:
  using Coefficients = std::map<GroupElement, ComplexMatrix>;

  CrossedElement(std::shared_ptr<const CrossedProduct> context, Coefficients coefficients);

  const CrossedProduct& context() const noexcept { return *context_; }
  const std::shared_ptr<const CrossedProduct>& context_ptr() const noexcept { return context_; }
  const Coefficients& coefficients() const noexcept { return coeffs_; }
  std::vector<GroupElement> support() const;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// x_g, zero when g is outside the support.
  ComplexMatrix coefficient(const GroupElement& g) const;
  /// Largest word length in the support (0 for the zero element).
  std::size_t support_length() const;
  /// Every coefficient is a multiple of the identity.
  bool is_scalar(double tol = 1e-12) const;
  /// The multiple c with x_g = c·1; throws PreconditionError if x_g is not scalar.
  Complex scalar_coefficient(const GroupElement& g, double tol = 1e-12) const;

  CrossedElement adjoint() const;
  CrossedElement operator+(const CrossedElement& other) const;
  CrossedElement operator-(const CrossedElement& other) const;
  CrossedElement operator*(const CrossedElement& other) const;
  CrossedElement scaled(Complex c) const;
  /// Replaces each coefficient x_g by f(g, x_g).
  CrossedElement map_coefficients(
      const std::function<ComplexMatrix(const GroupElement&, const ComplexMatrix&)>& f) const;

  /// max_g max_ij |x_g - y_g|.
  double distance(const CrossedElement& other) const;

 private:
  void require_same(const CrossedElement& other) const;

  std::shared_ptr<const CrossedProduct> context_;
  Coefficients coeffs_;
};

struct TruncatedOperator {
  std::shared_ptr<const Ball> ball;
  /// Size of the length-function leg.
  Eigen::Index leg = 1;
  ComplexMatrix matrix;
  std::string provenance;
};

/// Per-radius norm trace of a family of compressions.
struct SeminormReport {
  double value = 0.0;
  bool converged = false;
  double tol = 0.0;
  std::vector<std::pair<std::size_t, double>> trace;
};

/// Runs `matrix_at(R)` over the schedule and records spectral norms. The value
/// is the last entry; `converged` means relative change < tol between the last
/// two radii.
SeminormReport norm_report(const std::function<ComplexMatrix(std::size_t)>& matrix_at,
                           const std::vector<std::size_t>& schedule, double tol,
                           const NormOptions& options = {});

/// x_g.
ComplexMatrix slice_E_g(const CrossedElement& z, const GroupElement& g);
/// x_e.
ComplexMatrix conditional_expectation(const CrossedElement& z);

/// Compression of z to ball(radius) ⊗ C^leg ⊗ H.
TruncatedOperator truncated_matrix(const CrossedElement& z, std::size_t radius,
                                   Eigen::Index leg = 1);
/// Same, over an already enumerated ball.
ComplexMatrix assemble(const CrossedElement& z, const Ball& ball, Eigen::Index leg = 1);

SeminormReport operator_norm(const CrossedElement& z, const std::vector<std::size_t>& schedule,
                             double tol = 1e-9, const NormOptions& options = {});

/// Vector functional η(w) = <ζ, T_R(w) ζ'> with unit vectors on ball(radius) ⊗ H.
class VectorFunctional {
 public:
  VectorFunctional(std::shared_ptr<const CrossedProduct> context, std::size_t radius,
                   ComplexVector zeta, ComplexVector zeta_prime);
  /// Vector state: ζ = ζ'.
  static VectorFunctional state(std::shared_ptr<const CrossedProduct> context, std::size_t radius,
                                ComplexVector zeta);
  static VectorFunctional random(std::shared_ptr<const CrossedProduct> context,
                                 std::size_t radius, Rng& rng);

  std::size_t radius() const noexcept { return radius_; }
  const ComplexVector& zeta() const noexcept { return zeta_; }
  const ComplexVector& zeta_prime() const noexcept { return zeta_prime_; }
  Complex operator()(const CrossedElement& z) const;

 private:
  std::shared_ptr<const CrossedProduct> context_;
  std::shared_ptr<const Ball> ball_;
  std::size_t radius_;
  ComplexVector zeta_;
  ComplexVector zeta_prime_;
};

/// (η ⊗ 1)δ(z) = Σ_g η(π(x_g) λ_g) λ_g, returned with scalar coefficients.
CrossedElement coaction_slice(const VectorFunctional& eta, const CrossedElement& z);

/// Random element with `terms` coefficients drawn from ball(radius).
CrossedElement random_element(const std::shared_ptr<const CrossedProduct>& context,
                              std::size_t radius, std::size_t terms, Rng& rng,
                              bool scalar = false);

}  // namespace crossmetric
