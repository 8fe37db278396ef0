#include "crossmetric/length.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crossmetric/errors.hpp"

namespace crossmetric {

namespace {

void require_selfadjoint_unitary(const ComplexMatrix& g, Eigen::Index n, const std::string& what) {
  if (g.rows() != n || g.cols() != n) {
    throw ValidationError(what + ": grading must be " + std::to_string(n) + "x" +
                          std::to_string(n));
  }
  if (!is_hermitian(g, 1e-12)) throw ValidationError(what + ": grading is not selfadjoint");
  const ComplexMatrix sq = g * g - ComplexMatrix::Identity(n, n);
  if (max_abs(sq) > 1e-12) throw ValidationError(what + ": grading is not unitary");
}

}  // namespace

MatrixLengthFunction::MatrixLengthFunction(std::shared_ptr<const GroupModel> group,
                                           std::string name, Eigen::Index size, Evaluator eval,
                                           std::optional<ComplexMatrix> grading)
    : group_(std::move(group)),
      name_(std::move(name)),
      size_(size),
      eval_(std::move(eval)),
      grading_(std::move(grading)) {
  if (!group_) throw ValidationError("length function: missing group");
  if (size_ < 1) throw ValidationError("length function: matrix size must be positive");
  if (grading_) require_selfadjoint_unitary(*grading_, size_, "length function " + name_);
}

MatrixLengthFunction MatrixLengthFunction::word(std::shared_ptr<const GroupModel> group) {
  const GroupModel* model = group.get();
  return MatrixLengthFunction(std::move(group), "word", 1, [model](const GroupElement& g) {
    ComplexMatrix m(1, 1);
    m(0, 0) = static_cast<double>(model->word_length(g));
    return m;
  });
}

MatrixLengthFunction MatrixLengthFunction::torus_z2(std::shared_ptr<const GroupModel> group) {
  if (!group || !(group->signature() == GroupSignature{GroupFamily::FreeAbelian, 2})) {
    throw ValidationError("torus_z2 length requires the group z^2");
  }
  const GroupModel* model = group.get();
  ComplexMatrix gamma = ComplexMatrix::Zero(2, 2);
  gamma(0, 0) = 1.0;
  gamma(1, 1) = -1.0;
  return MatrixLengthFunction(
      std::move(group), "torus_z2", 2,
      [model](const GroupElement& g) {
        model->check_same_model(g);
        const double n = static_cast<double>(g.coords()[0]);
        const double m = static_cast<double>(g.coords()[1]);
        ComplexMatrix out = ComplexMatrix::Zero(2, 2);
        out(0, 1) = Complex(n, m);
        out(1, 0) = Complex(n, -m);
        return out;
      },
      gamma);
}

MatrixLengthFunction MatrixLengthFunction::tabulated(
    std::shared_ptr<const GroupModel> group,
    std::unordered_map<GroupElement, ComplexMatrix, GroupElementHash> values,
    std::optional<ComplexMatrix> grading, TabulatedExtension extension) {
  if (!group) throw ValidationError("tabulated length: missing group");
  if (values.empty()) throw ValidationError("tabulated length: no values");
  const Eigen::Index n = values.begin()->second.rows();
  for (const auto& [g, m] : values) {
    group->check_same_model(g);
    if (m.rows() != n || m.cols() != n) {
      throw ValidationError("tabulated length: all values must be square of one size");
    }
    require_finite(m, "tabulated length value");
  }
  if (extension == TabulatedExtension::WordScaled && grading) {
    throw ValidationError("tabulated length: word_scaled extension cannot be graded");
  }
  const GroupModel* model = group.get();
  auto table = std::make_shared<const std::unordered_map<GroupElement, ComplexMatrix,
                                                         GroupElementHash>>(std::move(values));
  return MatrixLengthFunction(
      std::move(group), "tabulated", n,
      [model, table, extension, n](const GroupElement& g) -> ComplexMatrix {
        const auto it = table->find(g);
        if (it != table->end()) return it->second;
        if (extension == TabulatedExtension::Strict) {
          throw PreconditionError("tabulated length: element outside the table");
        }
        return static_cast<double>(model->word_length(g)) * ComplexMatrix::Identity(n, n);
      },
      std::move(grading));
}

ComplexMatrix MatrixLengthFunction::operator()(const GroupElement& g) const {
  group_->check_same_model(g);
  return eval_(g);
}

ComplexMatrix MatrixLengthFunction::phi(const GroupElement& g, const GroupElement& s) const {
  return (*this)(s) - (*this)(group_->multiply(group_->invert(g), s));
}

double MatrixLengthFunction::phi_sup(const GroupElement& g, std::size_t radius) const {
  const Ball b = group_->ball(radius);
  double best = 0.0;
  for (const auto& s : b.elements) best = std::max(best, spectral_norm(phi(g, s)));
  return best;
}

PropernessProfile MatrixLengthFunction::properness_profile(std::size_t r_max) const {
  if (r_max < 1) throw PreconditionError("properness_profile: r_max must be at least 1");
  PropernessProfile out;
  for (std::size_t r = 1; r <= r_max; ++r) {
    const auto sphere = group_->sphere(r);
    if (sphere.empty()) {
      out.finite_group = true;
      break;
    }
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& s : sphere) lowest = std::min(lowest, min_singular_value((*this)(s)));
    out.entries.push_back({r, lowest});
  }
  bool monotone = true;
  for (std::size_t i = 1; i < out.entries.size(); ++i) {
    if (out.entries[i].min_singular < out.entries[i - 1].min_singular) monotone = false;
  }
  out.diverging = !out.finite_group && out.entries.size() >= 2 && monotone &&
                  out.entries.back().min_singular > out.entries.front().min_singular;
  return out;
}

LengthAxiomReport MatrixLengthFunction::check_axioms(std::size_t radius, double tol) const {
  LengthAxiomReport rep;
  rep.radius = radius;
  const Ball b = group_->ball(radius);
  for (const auto& g : b.elements) {
    const ComplexMatrix v = (*this)(g);
    rep.max_selfadjoint_defect = std::max(rep.max_selfadjoint_defect, hermitian_defect(v));
    const bool zero = max_abs(v) == 0.0;
    if (zero != g.is_identity()) rep.vanishes_only_at_identity = false;
    if (grading_) {
      rep.max_anticommutator =
          std::max(rep.max_anticommutator, max_abs(*grading_ * v + v * *grading_));
    }
  }
  for (const auto& s : group_->generators()) {
    double previous = 0.0;
    for (std::size_t r = 0; r <= radius; ++r) {
      const double current = phi_sup(s, r);
      if (current < previous) rep.phi_sup_monotone = false;
      previous = current;
    }
  }
  rep.pass = rep.max_selfadjoint_defect <= tol && rep.vanishes_only_at_identity &&
             rep.max_anticommutator <= tol && rep.phi_sup_monotone;
  return rep;
}

}  // namespace crossmetric
