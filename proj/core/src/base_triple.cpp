#include "crossmetric/base_triple.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "crossmetric/errors.hpp"

namespace crossmetric {

namespace {

constexpr double kTol = 1e-12;

ComplexMatrix sigma1() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(0, 1) = 1.0;
  s(1, 0) = 1.0;
  return s;
}

ComplexMatrix sigma3() {
  ComplexMatrix s = ComplexMatrix::Zero(2, 2);
  s(0, 0) = 1.0;
  s(1, 1) = -1.0;
  return s;
}

ComplexMatrix matrix_power(const ComplexMatrix& u, std::int64_t k) {
  const Eigen::Index n = u.rows();
  ComplexMatrix base = k < 0 ? ComplexMatrix(u.adjoint()) : u;
  std::uint64_t e = static_cast<std::uint64_t>(k < 0 ? -k : k);
  ComplexMatrix out = ComplexMatrix::Identity(n, n);
  while (e) {
    if (e & 1U) out = out * base;
    base = base * base;
    e >>= 1U;
  }
  return out;
}

double relative_defect(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs(a - b) / std::max(1.0, max_abs(b));
}

void require_unitary(const ComplexMatrix& u, const std::string& what) {
  if (u.rows() != u.cols()) throw ValidationError(what + " is not square");
  require_finite(u, what);
  const ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
  if (max_abs(u.adjoint() * u - id) > 1e-10) throw ValidationError(what + " is not unitary");
}

}  // namespace

bool span_contains(std::span<const ComplexMatrix> basis, const ComplexMatrix& target, double tol) {
  const double scale = target.norm();
  if (scale == 0.0) return true;
  if (basis.empty()) return false;
  const Eigen::Index len = target.size();
  ComplexMatrix b(len, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k].size() != len) return false;
    b.col(static_cast<Eigen::Index>(k)) = basis[k].reshaped();
  }
  const ComplexVector t = target.reshaped();
  const ComplexVector coeffs = b.completeOrthogonalDecomposition().solve(t);
  return (b * coeffs - t).norm() <= tol * scale;
}

FiniteSpectralTriple::FiniteSpectralTriple(ComplexMatrix dirac,
                                           std::vector<ComplexMatrix> algebra_basis,
                                           std::optional<ComplexMatrix> grading, std::string name)
    : name_(std::move(name)),
      dirac_(std::move(dirac)),
      basis_(std::move(algebra_basis)),
      grading_(std::move(grading)) {
  const Eigen::Index m = dirac_.rows();
  if (m < 1 || dirac_.cols() != m) throw ValidationError("base triple: D must be square");
  require_finite(dirac_, "base triple D");
  if (!is_hermitian(dirac_, kTol)) throw ValidationError("base triple: D is not selfadjoint");
  if (basis_.empty()) throw ValidationError("base triple: empty algebra basis");
  for (const auto& a : basis_) {
    if (a.rows() != m || a.cols() != m) {
      throw ValidationError("base triple: algebra elements must be " + std::to_string(m) + "x" +
                            std::to_string(m));
    }
    require_finite(a, "base triple algebra element");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(m, m);
  if (!span_contains(basis_, id)) throw ValidationError("base triple: algebra is not unital");
  for (const auto& a : basis_) {
    if (!span_contains(basis_, a.adjoint())) {
      throw ValidationError("base triple: algebra is not closed under adjoint");
    }
    for (const auto& b : basis_) {
      if (!span_contains(basis_, a * b)) {
        throw ValidationError("base triple: algebra is not closed under products");
      }
    }
  }
  if (grading_) {
    const ComplexMatrix& g = *grading_;
    if (g.rows() != m || g.cols() != m) throw ValidationError("base triple: grading has wrong size");
    if (!is_hermitian(g, kTol) || max_abs(g * g - id) > kTol) {
      throw ValidationError("base triple: grading must be a selfadjoint unitary");
    }
    if (max_abs(g * dirac_ + dirac_ * g) > kTol * std::max(1.0, max_abs(dirac_))) {
      throw ValidationError("base triple: grading does not anticommute with D");
    }
    for (const auto& a : basis_) {
      if (max_abs(g * a - a * g) > kTol * std::max(1.0, max_abs(a))) {
        throw ValidationError("base triple: grading does not commute with the algebra");
      }
    }
  }
}

FiniteSpectralTriple FiniteSpectralTriple::lip_triple(const RealMatrix& distance) {
  const Eigen::Index n = distance.rows();
  if (n < 1 || distance.cols() != n) throw ValidationError("finite metric: distance must be square");
  if (!distance.allFinite()) throw ValidationError("finite metric: non-finite distance");
  for (Eigen::Index x = 0; x < n; ++x) {
    if (distance(x, x) != 0.0) throw ValidationError("finite metric: nonzero diagonal");
    for (Eigen::Index y = 0; y < n; ++y) {
      if (distance(x, y) != distance(y, x)) throw ValidationError("finite metric: not symmetric");
      if (x != y && !(distance(x, y) > 0.0)) {
        throw ValidationError("finite metric: distinct points at distance zero");
      }
      for (Eigen::Index z = 0; z < n; ++z) {
        if (distance(x, z) > distance(x, y) + distance(y, z) + 1e-12 * distance(x, z)) {
          throw ValidationError("finite metric: triangle inequality fails");
        }
      }
    }
  }

  const auto np = static_cast<std::size_t>(n);
  std::vector<std::array<std::size_t, 3>> labels;
  ComplexMatrix dirac;
  if (np == 1) {
    labels.push_back({0, 0, 0});
    dirac = ComplexMatrix::Zero(1, 1);
  } else {
    for (std::size_t x = 0; x < np; ++x) {
      for (std::size_t y = x + 1; y < np; ++y) {
        labels.push_back({x, y, 0});
        labels.push_back({y, x, 0});
      }
    }
    const auto dim = static_cast<Eigen::Index>(labels.size());
    dirac = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; i += 2) {
      const auto& l = labels[static_cast<std::size_t>(i)];
      const double inv = 1.0 / distance(static_cast<Eigen::Index>(l[0]),
                                        static_cast<Eigen::Index>(l[1]));
      dirac(i, i + 1) = inv;
      dirac(i + 1, i) = inv;
    }
  }

  const auto dim = static_cast<Eigen::Index>(labels.size());
  std::vector<ComplexMatrix> projections(np, ComplexMatrix::Zero(dim, dim));
  for (Eigen::Index i = 0; i < dim; ++i) projections[labels[static_cast<std::size_t>(i)][0]](i, i) = 1.0;

  FiniteSpectralTriple t(dirac, projections, std::nullopt, "finite_metric");
  t.point_projections_ = std::move(projections);
  t.labels_ = std::move(labels);
  return t;
}

FiniteSpectralTriple FiniteSpectralTriple::matrix_algebra(Eigen::Index k,
                                                          std::optional<ComplexMatrix> dirac) {
  if (k < 1) throw ValidationError("matrix algebra: k must be positive");
  ComplexMatrix d;
  if (dirac) {
    d = *dirac;
  } else {
    d = ComplexMatrix::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i) d(i, i) = static_cast<double>(i);
  }
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(k, k);
      e(i, j) = 1.0;
      basis.push_back(std::move(e));
    }
  }
  return FiniteSpectralTriple(std::move(d), std::move(basis), std::nullopt,
                              "matrix_" + std::to_string(k));
}

FiniteSpectralTriple FiniteSpectralTriple::graded_double() const {
  if (grading_) throw PreconditionError("graded_double: triple is already graded");
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  std::vector<ComplexMatrix> basis;
  basis.reserve(basis_.size());
  for (const auto& a : basis_) basis.push_back(kron(a, id2));
  const ComplexMatrix id = ComplexMatrix::Identity(dim(), dim());
  FiniteSpectralTriple t(kron(dirac_, sigma1()), std::move(basis), kron(id, sigma3()),
                         name_ + "_graded");
  for (const auto& p : point_projections_) t.point_projections_.push_back(kron(p, id2));
  for (const auto& l : labels_) {
    t.labels_.push_back({l[0], l[1], 2 * l[2]});
    t.labels_.push_back({l[0], l[1], 2 * l[2] + 1});
  }
  return t;
}

ComplexMatrix FiniteSpectralTriple::commutator(const ComplexMatrix& a) const {
  return dirac_ * a - a * dirac_;
}

double FiniteSpectralTriple::lipschitz(const ComplexMatrix& a) const {
  return spectral_norm(commutator(a));
}

bool FiniteSpectralTriple::in_algebra(const ComplexMatrix& a, double tol) const {
  return a.rows() == dim() && a.cols() == dim() && span_contains(basis_, a, tol);
}

std::optional<std::size_t> FiniteSpectralTriple::point_count() const noexcept {
  if (point_projections_.empty()) return std::nullopt;
  return point_projections_.size();
}

ComplexMatrix FiniteSpectralTriple::function(std::span<const double> values) const {
  if (point_projections_.empty()) throw PreconditionError("function: triple has no points");
  if (values.size() != point_projections_.size()) {
    throw PreconditionError("function: expected " + std::to_string(point_projections_.size()) +
                            " values");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
  for (std::size_t x = 0; x < values.size(); ++x) out += values[x] * point_projections_[x];
  return out;
}

ComplexVector FiniteSpectralTriple::point_vector(std::size_t x) const {
  if (x >= point_projections_.size()) throw PreconditionError("point_vector: no such point");
  const ComplexMatrix& p = point_projections_[x];
  for (Eigen::Index i = 0; i < dim(); ++i) {
    if (p(i, i) != 0.0) {
      ComplexVector v = ComplexVector::Zero(dim());
      v(i) = 1.0;
      return v;
    }
  }
  throw PreconditionError("point_vector: empty projection");
}

ComplexMatrix FiniteSpectralTriple::sample_element(Rng& rng) const {
  ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
  for (const auto& b : basis_) out += complex_uniform(rng) * b;
  return out;
}

GroupAction::GroupAction(std::shared_ptr<const GroupModel> group, Kind kind,
                         std::vector<ComplexMatrix> unitaries, Eigen::Index dim)
    : group_(std::move(group)), kind_(kind), unitaries_(std::move(unitaries)), dim_(dim) {
  if (!group_) throw ValidationError("action: missing group");
  const std::size_t rank = group_->abelianization_rank();
  if (unitaries_.size() != rank) {
    throw ValidationError("action: expected " + std::to_string(rank) + " generator unitaries for " +
                          group_->name() + ", got " + std::to_string(unitaries_.size()));
  }
  for (std::size_t i = 0; i < unitaries_.size(); ++i) {
    const auto& u = unitaries_[i];
    if (u.rows() != dim_) throw ValidationError("action: unitary has wrong size");
    require_unitary(u, "action unitary " + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j) {
      if (max_abs(u * unitaries_[j] - unitaries_[j] * u) > 1e-10) {
        throw ValidationError("action: generator unitaries must commute");
      }
    }
  }
  if (const auto order = group_->abelianization_order(); order && !unitaries_.empty()) {
    const ComplexMatrix p = matrix_power(unitaries_[0], *order);
    if (max_abs(p - ComplexMatrix::Identity(dim_, dim_)) > 1e-10) {
      throw ValidationError("action: unitary power does not match the cyclic order");
    }
  }
}

GroupAction GroupAction::trivial(std::shared_ptr<const GroupModel> group, Eigen::Index dim) {
  if (!group) throw ValidationError("action: missing group");
  std::vector<ComplexMatrix> us(group->abelianization_rank(), ComplexMatrix::Identity(dim, dim));
  return GroupAction(std::move(group), Kind::Trivial, std::move(us), dim);
}

GroupAction GroupAction::permutation(std::shared_ptr<const GroupModel> group,
                                     const FiniteSpectralTriple& triple,
                                     const std::vector<std::vector<std::size_t>>& permutations) {
  const auto points = triple.point_count();
  if (!points) throw ValidationError("permutation action requires a finite metric base");
  const auto& labels = triple.site_labels();
  std::map<std::array<std::size_t, 3>, Eigen::Index> where;
  for (std::size_t i = 0; i < labels.size(); ++i) where[labels[i]] = static_cast<Eigen::Index>(i);

  std::vector<ComplexMatrix> us;
  for (const auto& perm : permutations) {
    if (perm.size() != *points) {
      throw ValidationError("permutation action: each permutation needs " +
                            std::to_string(*points) + " entries");
    }
    std::vector<bool> hit(*points, false);
    for (std::size_t v : perm) {
      if (v >= *points || hit[v]) throw ValidationError("permutation action: not a bijection");
      hit[v] = true;
    }
    ComplexMatrix u = ComplexMatrix::Zero(triple.dim(), triple.dim());
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const auto& l = labels[j];
      const std::array<std::size_t, 3> image = {perm[l[0]], perm[l[1]], l[2]};
      u(where.at(image), static_cast<Eigen::Index>(j)) = 1.0;
    }
    us.push_back(std::move(u));
  }
  return GroupAction(std::move(group), Kind::Permutation, std::move(us), triple.dim());
}

GroupAction GroupAction::inner(std::shared_ptr<const GroupModel> group,
                               std::vector<ComplexMatrix> unitaries) {
  if (unitaries.empty()) throw ValidationError("inner action: no unitaries");
  const Eigen::Index dim = unitaries.front().rows();
  return GroupAction(std::move(group), Kind::Inner, std::move(unitaries), dim);
}

ComplexMatrix GroupAction::unitary(const GroupElement& g) const {
  const Coordinates k = group_->abelianize(g);
  ComplexMatrix out = ComplexMatrix::Identity(dim_, dim_);
  if (kind_ == Kind::Trivial) return out;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] != 0) out = out * matrix_power(unitaries_[i], k[i]);
  }
  return out;
}

ComplexMatrix GroupAction::act(const GroupElement& g, const ComplexMatrix& a) const {
  if (kind_ == Kind::Trivial) {
    group_->check_same_model(g);
    return a;
  }
  const ComplexMatrix u = unitary(g);
  return u * a * u.adjoint();
}

ActionReport GroupAction::check(const FiniteSpectralTriple& triple, std::size_t radius,
                                std::uint64_t seed, double tol) const {
  if (triple.dim() != dim_) throw ValidationError("action: triple dimension mismatch");
  ActionReport rep;
  Rng rng(seed);
  const Ball b = group_->ball(radius);
  const ComplexMatrix id = ComplexMatrix::Identity(dim_, dim_);
  for (int trial = 0; trial < 8; ++trial) {
    const ComplexMatrix a = triple.sample_element(rng);
    const ComplexMatrix c = triple.sample_element(rng);
    rep.identity_defect =
        std::max(rep.identity_defect, relative_defect(act(group_->identity(), a), a));
    const auto& g = b.elements[uniform_index(rng, b.size())];
    const auto& h = b.elements[uniform_index(rng, b.size())];
    rep.homomorphism_defect = std::max(
        rep.homomorphism_defect,
        relative_defect(act(g, act(h, a)), act(group_->multiply(g, h), a)));
    rep.multiplicativity_defect = std::max(
        rep.multiplicativity_defect, relative_defect(act(g, a * c), act(g, a) * act(g, c)));
    rep.adjoint_defect =
        std::max(rep.adjoint_defect, relative_defect(act(g, a.adjoint()), act(g, a).adjoint()));
    rep.unital_defect = std::max(rep.unital_defect, relative_defect(act(g, id), id));
  }
  for (const auto& s : group_->generators()) {
    for (const auto& a : triple.algebra_basis()) {
      if (!triple.in_algebra(act(s, a))) rep.preserves_algebra = false;
    }
  }
  rep.pass = rep.identity_defect <= tol && rep.homomorphism_defect <= tol &&
             rep.multiplicativity_defect <= tol && rep.adjoint_defect <= tol &&
             rep.unital_defect <= tol && rep.preserves_algebra;
  return rep;
}

double equicontinuity_sup(const FiniteSpectralTriple& triple, const GroupAction& action,
                          const ComplexMatrix& a, std::size_t radius) {
  const Ball b = action.group().ball(radius);
  double best = 0.0;
  for (const auto& g : b.elements) best = std::max(best, triple.lipschitz(action.act(g, a)));
  return best;
}

OperatorSystemReport validate_operator_system(const OperatorSystemSpec& spec,
                                              const FiniteSpectralTriple& triple,
                                              const GroupAction* action) {
  OperatorSystemReport rep;
  const Eigen::Index m = triple.dim();
  for (const auto& b : spec.basis) {
    if (b.rows() != m || b.cols() != m) return rep;
  }
  rep.contains_unit = span_contains(spec.basis, ComplexMatrix::Identity(m, m));
  rep.adjoint_closed = std::all_of(spec.basis.begin(), spec.basis.end(), [&](const auto& b) {
    return span_contains(spec.basis, b.adjoint());
  });
  rep.inside_algebra = std::all_of(spec.basis.begin(), spec.basis.end(),
                                   [&](const auto& b) { return triple.in_algebra(b); });
  if (spec.action_invariant) {
    if (!action) throw PreconditionError("operator system: invariance flag needs an action");
    for (const auto& s : action->group().generators()) {
      for (const auto& b : spec.basis) {
        if (!span_contains(spec.basis, action->act(s, b))) rep.action_invariant = false;
      }
    }
  }
  rep.pass = !spec.basis.empty() && rep.contains_unit && rep.adjoint_closed && rep.inside_algebra &&
             rep.action_invariant;
  return rep;
}

}  // namespace crossmetric
