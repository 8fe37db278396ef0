#pragma once

// States on CΓ, the Berezin transform along Følner balls and the
// quantitative checks built on it.
//
// β_F(Σ π(x_g)λ_g) = Σ c_g π(x_g)λ_g with c_g = |F ∩ gF| / |F|. The matrix
// [c_{ts⁻¹}] is the Gram matrix of the unit vectors λ_{t⁻¹}ξ_F, so β_F acts
// on every truncated d_l(z) as a unit-diagonal positive Schur multiplier.
// That is why the contraction check is exact at every radius.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "crossmetric/seminorms.hpp"

namespace crossmetric {

/// c_g = |F ∩ gF| / |F|.
double chi_coefficient(const GroupModel& group, const Ball& f, const GroupElement& g);
/// <ξ_F, λ_g ξ_F> computed from the truncated left regular representation.
double chi_vector_state(const std::shared_ptr<const GroupModel>& group, const Ball& f,
                        const GroupElement& g);

CrossedElement berezin(const Ball& f, const CrossedElement& z);

class StateSpec {
 public:
  enum class Kind { Counit, Trace, Folner, Vector };

  static StateSpec counit();
  static StateSpec trace();
  static StateSpec folner(std::shared_ptr<const GroupModel> group, std::shared_ptr<const Ball> f);
  static StateSpec vector(VectorFunctional functional);

  Kind kind() const noexcept { return kind_; }
  std::string name() const;
  const Ball& folner_set() const;

  /// Counit, trace and Følner states need scalar coefficients; vector states
  /// accept any element of their crossed product.
  Complex operator()(const CrossedElement& z) const;

 private:
  explicit StateSpec(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::shared_ptr<const GroupModel> group_;
  std::shared_ptr<const Ball> folner_;
  std::optional<VectorFunctional> vector_;
};

struct CheckReport {
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  std::size_t radius = 0;
  bool pass = false;
  double slack = 0.0;
};

/// ||d_l(β_F z)||_R <= ||d_l(z)||_R + slack at the same radius.
CheckReport contraction_check(const CrossedGeometry& geometry, const Ball& f,
                              const CrossedElement& z, std::size_t radius, double slack = 1e-10);

/// ||d_l((η ⊗ 1)δ(z))||_R <= ||d_l(z)||_R' + slack, raising R' by one up to
/// `max_escalations` times while the inequality fails.
CheckReport slice_contraction_check(const CrossedGeometry& geometry, const VectorFunctional& eta,
                                    const CrossedElement& z, std::size_t radius,
                                    std::size_t radius_prime, double slack = 1e-6,
                                    std::size_t max_escalations = 2);

/// |η(β_F z - z) - (χ_F - ε)((η ⊗ 1)δ(z))|, lhs and rhs being the two sides.
CheckReport approximation_identity_check(const VectorFunctional& eta, const Ball& f,
                                         const CrossedElement& z, double slack = 1e-10);

/// Coefficients c_g of a state on CΓ: χ_F, τ (δ_{g,e}) or ε (1).
using CoefficientMap = std::function<double(const GroupElement&)>;
CoefficientMap folner_coefficients(std::shared_ptr<const GroupModel> group,
                                   std::shared_ptr<const Ball> f);
CoefficientMap trace_coefficients();

/// sqrt( Σ_{g ∈ ball(r) \ {e}} (1 - c_g)² / σ_min(l(g))² ), an upper bound for
/// the distance to ε over selfadjoint scalar elements supported in ball(r).
double mk_upper(const MatrixLengthFunction& length, const CoefficientMap& c, std::size_t r);

/// ||β_F(z) - z||_R <= mk_upper(F, r) · L_l(z) + slack with supp z ⊆ ball(r).
CheckReport approximation_bound_check(const CrossedGeometry& geometry, const Ball& f,
                                      const CrossedElement& z, std::size_t r,
                                      const std::vector<std::size_t>& schedule,
                                      double slack = 1e-8);

struct FolnerRow {
  std::size_t n = 0;
  double rho_hat = 0.0;
};

struct FolnerTable {
  std::size_t r = 0;
  std::string group;
  std::string length;
  std::vector<FolnerRow> rows;
  bool strictly_decreasing = false;
};

/// ρ̂^{(r)}(χ_{F_n}, ε) for F_n = ball(n), n in [n_min, n_max].
FolnerTable folner_convergence(const MatrixLengthFunction& length, std::size_t r,
                               std::size_t n_min, std::size_t n_max);

}  // namespace crossmetric
