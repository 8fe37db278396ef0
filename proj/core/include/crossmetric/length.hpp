#pragma once

// Matrix-valued length functions l : Γ → M_n(C).
//
// A length function is selfadjoint-valued, vanishes exactly at the identity
// and has bounded difference maps φ_g(s) = l(s) - l(g⁻¹s). It is graded
// (parity 0) when a selfadjoint unitary anticommutes with every value, and
// ungraded (parity 1) otherwise. The shipped instances are the scalar word
// length and the 2x2 torus length on Z^2,
//   l(n, m) = [[0, n + im], [n - im, 0]],  graded by diag(1, -1).

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "crossmetric/group.hpp"
#include "crossmetric/numerics.hpp"

namespace crossmetric {

enum class TabulatedExtension {
  /// Evaluating outside the table is a PreconditionError.
  Strict,
  /// Outside the table l(g) = word_length(g) * I_n (ungraded only).
  WordScaled,
};

struct PropernessEntry {
  std::size_t radius = 0;
  /// Minimum over the word sphere of the smallest singular value of l(s).
  double min_singular = 0.0;
};

struct PropernessProfile {
  std::vector<PropernessEntry> entries;
  /// Nondecreasing with a strictly larger last entry over the computed range.
  bool diverging = false;
  /// A sphere came back empty: the group is finite and properness is vacuous.
  bool finite_group = false;
};

struct LengthAxiomReport {
  std::size_t radius = 0;
  double max_selfadjoint_defect = 0.0;
  bool vanishes_only_at_identity = true;
  double max_anticommutator = 0.0;
  /// phi_sup(s, r') nondecreasing in r' for every generator s, r' <= radius.
  bool phi_sup_monotone = true;
  bool pass = true;
};

class MatrixLengthFunction {
 public:
  using Evaluator = std::function<ComplexMatrix(const GroupElement&)>;

  MatrixLengthFunction(std::shared_ptr<const GroupModel> group, std::string name,
                       Eigen::Index size, Evaluator eval,
                       std::optional<ComplexMatrix> grading = std::nullopt);

  /// Scalar word length with respect to the model's generators (parity 1).
  static MatrixLengthFunction word(std::shared_ptr<const GroupModel> group);
  /// Torus length on Z^2 (parity 0). Throws ValidationError for other groups.
  static MatrixLengthFunction torus_z2(std::shared_ptr<const GroupModel> group);
  static MatrixLengthFunction tabulated(
      std::shared_ptr<const GroupModel> group,
      std::unordered_map<GroupElement, ComplexMatrix, GroupElementHash> values,
      std::optional<ComplexMatrix> grading = std::nullopt,
      TabulatedExtension extension = TabulatedExtension::Strict);

  const std::string& name() const noexcept { return name_; }
  Eigen::Index size() const noexcept { return size_; }
  int parity() const noexcept { return grading_ ? 0 : 1; }
  const std::optional<ComplexMatrix>& grading() const noexcept { return grading_; }
  const GroupModel& group() const noexcept { return *group_; }
  const std::shared_ptr<const GroupModel>& group_ptr() const noexcept { return group_; }

  ComplexMatrix operator()(const GroupElement& g) const;

  /// φ_g(s) = l(s) - l(g⁻¹s).
  ComplexMatrix phi(const GroupElement& g, const GroupElement& s) const;
  /// max over s in ball(r) of ||φ_g(s)||.
  double phi_sup(const GroupElement& g, std::size_t radius) const;

  PropernessProfile properness_profile(std::size_t r_max) const;
  LengthAxiomReport check_axioms(std::size_t radius, double tol = 1e-12) const;

 private:
  std::shared_ptr<const GroupModel> group_;
  std::string name_;
  Eigen::Index size_;
  Evaluator eval_;
  std::optional<ComplexMatrix> grading_;
};

}  // namespace crossmetric
