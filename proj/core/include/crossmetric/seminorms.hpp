#pragma once

// Dirac operators on ℓ²(Γ) ⊗ C^n ⊗ H and the seminorms built from them.
//
// Every commutator is assembled from its closed form rather than by
// multiplying truncated operators, so each per-radius value is an honest
// compression of the bounded operator:
//   d_l(π(x)λ_g), block (t, s) with t = g s:  φ_g(t) ⊗ α_{t⁻¹}(x)
//   d_H(π(x)λ_g), block (t, s) with t = g s:  1_n ⊗ [D, α_{t⁻¹}(x)]
// and d_V = d_l.

#include <cstddef>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "crossmetric/crossed.hpp"
#include "crossmetric/length.hpp"

namespace crossmetric {

/// Order-preserving norm on finitely supported functions Γ → [0, ∞).
struct SupNorm {};
struct LpNorm {
  double p = 2.0;
};
using VerticalNorm = std::variant<SupNorm, LpNorm>;

/// Parity pair (p, q): p of the length function, q of the base triple.
struct Parities {
  int p = 1;
  int q = 1;
  friend bool operator==(const Parities&, const Parities&) = default;
};

struct TensorSumOperator {
  Parities parities;
  std::shared_ptr<const Ball> ball;
  /// True for (1, 1), where the space is doubled.
  bool doubled = false;
  ComplexMatrix matrix;
  std::optional<ComplexMatrix> grading;
};

struct TensorSumAudit {
  double selfadjoint_defect = 0.0;
  double grading_anticommutator = 0.0;
  double grading_element_commutator = 0.0;
  double ts_selfadjoint_defect = 0.0;
  bool graded = false;
  bool pass = false;
};

struct ResolventDiagnostic {
  double threshold = 0.0;
  /// (R, number of singular values of (D_l + i)⁻¹ above threshold).
  std::vector<std::pair<std::size_t, std::size_t>> counts;
  /// (R, smallest singular value), which must decrease toward zero.
  std::vector<std::pair<std::size_t, double>> smallest;
  bool stabilized = false;
};

class CrossedGeometry {
 public:
  CrossedGeometry(std::shared_ptr<const CrossedProduct> context, MatrixLengthFunction length);

  const CrossedProduct& context() const noexcept { return *context_; }
  const std::shared_ptr<const CrossedProduct>& context_ptr() const noexcept { return context_; }
  const MatrixLengthFunction& length() const noexcept { return length_; }
  Eigen::Index leg() const noexcept { return length_.size(); }
  /// |ball(R)| · n · m.
  Eigen::Index space_dim(std::size_t radius) const;

  /// Block-diagonal D_l on ball(R) ⊗ C^n (no H leg).
  ComplexMatrix dirac_truncation(std::size_t radius) const;
  /// D_l ⊗ 1_H.
  ComplexMatrix dirac_with_base(std::size_t radius) const;

  /// π(z) on ball(R) ⊗ C^n ⊗ H.
  ComplexMatrix represent(const CrossedElement& z, std::size_t radius) const;
  ComplexMatrix d_l(const CrossedElement& z, std::size_t radius) const;
  ComplexMatrix d_V(const CrossedElement& z, std::size_t radius) const { return d_l(z, radius); }
  ComplexMatrix d_H(const CrossedElement& z, std::size_t radius) const;

  SeminormReport L_l(const CrossedElement& z, const std::vector<std::size_t>& schedule,
                     double tol = 1e-9) const;
  /// |||g ↦ L_D(x_g)||| for the given order-preserving norm.
  double L_H_norm(const CrossedElement& z, const VerticalNorm& nvert = SupNorm{}) const;
  /// max{L_l(z), L_H(z), L_H(z*)}; the convergence flag comes from L_l.
  SeminormReport combined_L(const CrossedElement& z, const VerticalNorm& nvert,
                            const std::vector<std::size_t>& schedule, double tol = 1e-9) const;
  SeminormReport L_infinity(const CrossedElement& z, const std::vector<std::size_t>& schedule,
                            double tol = 1e-9) const {
    return combined_L(z, SupNorm{}, schedule, tol);
  }

  /// Throws ValidationError naming "parities" when p or q disagree with the data.
  void require_parities(const Parities& parities) const;
  TensorSumOperator tensor_sum(const Parities& parities, std::size_t radius) const;
  /// Closed-form commutator of the tensor sum with π(z).
  ComplexMatrix tensor_commutator(const CrossedElement& z, const Parities& parities,
                                  std::size_t radius) const;
  SeminormReport L_tensor(const CrossedElement& z, const Parities& parities,
                          const std::vector<std::size_t>& schedule, double tol = 1e-9) const;
  /// [[0, l(s) ⊗ 1 + i 1 ⊗ D], [l(s) ⊗ 1 - i 1 ⊗ D, 0]].
  ComplexMatrix T_s(const GroupElement& s) const;

  /// Selfadjointness, grading relations against sampled elements and T_s blocks.
  TensorSumAudit audit_tensor_sum(const Parities& parities, std::size_t radius,
                                  const std::vector<CrossedElement>& samples,
                                  std::size_t ts_radius) const;

  ResolventDiagnostic resolvent_profile(const std::vector<std::size_t>& schedule,
                                        double threshold = 0.2) const;

 private:
  std::shared_ptr<const CrossedProduct> context_;
  MatrixLengthFunction length_;
};

}  // namespace crossmetric
