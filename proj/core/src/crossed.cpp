#include "crossmetric/crossed.hpp"

#include <algorithm>
#include <cmath>

#include "crossmetric/errors.hpp"

namespace crossmetric {

CrossedProduct::CrossedProduct(std::shared_ptr<const GroupModel> group,
                               FiniteSpectralTriple triple, GroupAction action)
    : group_(std::move(group)), triple_(std::move(triple)), action_(std::move(action)) {}

std::shared_ptr<const CrossedProduct> CrossedProduct::create(
    std::shared_ptr<const GroupModel> group, FiniteSpectralTriple triple, GroupAction action) {
  if (!group) throw ValidationError("crossed product: missing group");
  if (&action.group() != group.get()) {
    throw ModelMismatchError("crossed product: action is defined for a different group model");
  }
  if (action.dim() != triple.dim()) {
    throw ValidationError("crossed product: action and triple act on different spaces");
  }
  return std::shared_ptr<const CrossedProduct>(
      new CrossedProduct(std::move(group), std::move(triple), std::move(action)));
}

std::shared_ptr<const CrossedProduct> CrossedProduct::group_algebra(
    std::shared_ptr<const GroupModel> group) {
  RealMatrix d = RealMatrix::Zero(1, 1);
  auto triple = FiniteSpectralTriple::lip_triple(d);
  auto action = GroupAction::trivial(group, 1);
  return create(std::move(group), std::move(triple), std::move(action));
}

CrossedElement CrossedProduct::zero() const { return CrossedElement(shared_from_this(), {}); }

CrossedElement CrossedProduct::one() const {
  return monomial(ComplexMatrix::Identity(dim(), dim()), group_->identity());
}

CrossedElement CrossedProduct::lambda(const GroupElement& g) const {
  return monomial(ComplexMatrix::Identity(dim(), dim()), g);
}

CrossedElement CrossedProduct::monomial(const ComplexMatrix& x, const GroupElement& g) const {
  return CrossedElement(shared_from_this(), {{g, x}});
}

CrossedElement CrossedProduct::element(std::map<GroupElement, ComplexMatrix> coefficients) const {
  return CrossedElement(shared_from_this(), std::move(coefficients));
}

std::vector<ComplexMatrix> CrossedProduct::site_unitaries(const Ball& ball) const {
  std::vector<ComplexMatrix> out;
  out.reserve(ball.size());
  for (const auto& t : ball.elements) out.push_back(action_.unitary(group_->invert(t)));
  return out;
}

CrossedElement::CrossedElement(std::shared_ptr<const CrossedProduct> context,
                               Coefficients coefficients)
    : context_(std::move(context)) {
  if (!context_) throw ValidationError("crossed element: missing context");
  const Eigen::Index m = context_->dim();
  for (auto& [g, x] : coefficients) {
    context_->group().check_same_model(g);
    if (x.rows() != m || x.cols() != m) {
      throw ValidationError("crossed element: coefficient must be " + std::to_string(m) + "x" +
                            std::to_string(m));
    }
    require_finite(x, "crossed element coefficient");
    if (max_abs(x) != 0.0) coeffs_.emplace(g, std::move(x));
  }
}

std::vector<GroupElement> CrossedElement::support() const {
  std::vector<GroupElement> out;
  out.reserve(coeffs_.size());
  for (const auto& [g, x] : coeffs_) out.push_back(g);
  return out;
}

ComplexMatrix CrossedElement::coefficient(const GroupElement& g) const {
  context_->group().check_same_model(g);
  const auto it = coeffs_.find(g);
  if (it == coeffs_.end()) return ComplexMatrix::Zero(context_->dim(), context_->dim());
  return it->second;
}

std::size_t CrossedElement::support_length() const {
  std::size_t out = 0;
  for (const auto& [g, x] : coeffs_) out = std::max(out, context_->group().word_length(g));
  return out;
}

bool CrossedElement::is_scalar(double tol) const {
  for (const auto& [g, x] : coeffs_) {
    const Complex c = x(0, 0);
    const ComplexMatrix diff = x - c * ComplexMatrix::Identity(x.rows(), x.cols());
    if (max_abs(diff) > tol * std::max(1.0, max_abs(x))) return false;
  }
  return true;
}

Complex CrossedElement::scalar_coefficient(const GroupElement& g, double tol) const {
  const ComplexMatrix x = coefficient(g);
  const Complex c = x(0, 0);
  if (max_abs(x - c * ComplexMatrix::Identity(x.rows(), x.cols())) >
      tol * std::max(1.0, max_abs(x))) {
    throw PreconditionError("coefficient is not a multiple of the identity");
  }
  return c;
}

void CrossedElement::require_same(const CrossedElement& other) const {
  if (context_ != other.context_) {
    throw ModelMismatchError("crossed elements belong to different crossed products");
  }
}

CrossedElement CrossedElement::adjoint() const {
  const GroupModel& grp = context_->group();
  Coefficients out;
  for (const auto& [g, x] : coeffs_) {
    const GroupElement h = grp.invert(g);
    out.emplace(h, context_->action().act(h, x.adjoint()));
  }
  return CrossedElement(context_, std::move(out));
}

CrossedElement CrossedElement::operator+(const CrossedElement& other) const {
  require_same(other);
  Coefficients out = coeffs_;
  for (const auto& [g, y] : other.coeffs_) {
    auto [it, inserted] = out.emplace(g, y);
    if (!inserted) it->second += y;
  }
  return CrossedElement(context_, std::move(out));
}

CrossedElement CrossedElement::operator-(const CrossedElement& other) const {
  return *this + other.scaled(-1.0);
}

CrossedElement CrossedElement::operator*(const CrossedElement& other) const {
  require_same(other);
  const GroupModel& grp = context_->group();
  const GroupAction& act = context_->action();
  Coefficients out;
  for (const auto& [g, x] : coeffs_) {
    for (const auto& [h, y] : other.coeffs_) {
      ComplexMatrix term = x * act.act(g, y);
      auto [it, inserted] = out.emplace(grp.multiply(g, h), term);
      if (!inserted) it->second += term;
    }
  }
  return CrossedElement(context_, std::move(out));
}

CrossedElement CrossedElement::scaled(Complex c) const {
  Coefficients out;
  for (const auto& [g, x] : coeffs_) out.emplace(g, c * x);
  return CrossedElement(context_, std::move(out));
}

CrossedElement CrossedElement::map_coefficients(
    const std::function<ComplexMatrix(const GroupElement&, const ComplexMatrix&)>& f) const {
  Coefficients out;
  for (const auto& [g, x] : coeffs_) out.emplace(g, f(g, x));
  return CrossedElement(context_, std::move(out));
}

double CrossedElement::distance(const CrossedElement& other) const {
  require_same(other);
  const CrossedElement d = *this - other;
  double out = 0.0;
  for (const auto& [g, x] : d.coeffs_) out = std::max(out, max_abs(x));
  return out;
}

SeminormReport norm_report(const std::function<ComplexMatrix(std::size_t)>& matrix_at,
                           const std::vector<std::size_t>& schedule, double tol,
                           const NormOptions& options) {
  if (schedule.empty()) throw PreconditionError("norm schedule is empty");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] <= schedule[i - 1]) {
      throw PreconditionError("norm schedule must be strictly increasing");
    }
  }
  SeminormReport rep;
  rep.tol = tol;
  for (std::size_t r : schedule) {
    const NormResult n = spectral_norm_detailed(matrix_at(r), options);
    rep.trace.emplace_back(r, n.value);
  }
  rep.value = rep.trace.back().second;
  if (rep.trace.size() >= 2) {
    const double prev = rep.trace[rep.trace.size() - 2].second;
    rep.converged = std::abs(rep.value - prev) <= tol * std::max(1.0, rep.value);
  }
  return rep;
}

ComplexMatrix slice_E_g(const CrossedElement& z, const GroupElement& g) {
  return z.coefficient(g);
}

ComplexMatrix conditional_expectation(const CrossedElement& z) {
  return z.coefficient(z.context().group().identity());
}

ComplexMatrix assemble(const CrossedElement& z, const Ball& ball, Eigen::Index leg) {
  const CrossedProduct& ctx = z.context();
  const GroupModel& grp = ctx.group();
  const Eigen::Index m = ctx.dim();
  const Eigen::Index block = leg * m;
  const auto sites = static_cast<Eigen::Index>(ball.size());
  ComplexMatrix out = ComplexMatrix::Zero(sites * block, sites * block);
  const bool trivial = ctx.action().kind() == GroupAction::Kind::Trivial;
  const std::vector<ComplexMatrix> us = trivial ? std::vector<ComplexMatrix>{} : ctx.site_unitaries(ball);
  for (const auto& [g, x] : z.coefficients()) {
    for (std::size_t s = 0; s < ball.size(); ++s) {
      const auto t = ball.find(grp.multiply(g, ball.elements[s]));
      if (!t) continue;
      const ComplexMatrix a = trivial ? x : ComplexMatrix(us[*t] * x * us[*t].adjoint());
      const auto ti = static_cast<Eigen::Index>(*t);
      const auto si = static_cast<Eigen::Index>(s);
      for (Eigen::Index i = 0; i < leg; ++i) {
        out.block(ti * block + i * m, si * block + i * m, m, m) = a;
      }
    }
  }
  return out;
}

TruncatedOperator truncated_matrix(const CrossedElement& z, std::size_t radius, Eigen::Index leg) {
  if (leg < 1) throw PreconditionError("truncated_matrix: leg must be positive");
  auto ball = std::make_shared<const Ball>(z.context().group().ball(radius));
  TruncatedOperator op;
  op.matrix = assemble(z, *ball, leg);
  op.ball = std::move(ball);
  op.leg = leg;
  op.provenance = "covariant representation (pi(x) lambda_g xi)(t) = alpha_{t^-1}(x) xi(g^-1 t)";
  return op;
}

SeminormReport operator_norm(const CrossedElement& z, const std::vector<std::size_t>& schedule,
                             double tol, const NormOptions& options) {
  return norm_report([&](std::size_t r) { return truncated_matrix(z, r).matrix; }, schedule, tol,
                     options);
}

VectorFunctional::VectorFunctional(std::shared_ptr<const CrossedProduct> context,
                                   std::size_t radius, ComplexVector zeta,
                                   ComplexVector zeta_prime)
    : context_(std::move(context)),
      radius_(radius),
      zeta_(std::move(zeta)),
      zeta_prime_(std::move(zeta_prime)) {
  if (!context_) throw ValidationError("vector functional: missing context");
  ball_ = std::make_shared<const Ball>(context_->group().ball(radius_));
  const auto len = static_cast<Eigen::Index>(ball_->size()) * context_->dim();
  if (zeta_.size() != len || zeta_prime_.size() != len) {
    throw ValidationError("vector functional: vectors must have length " + std::to_string(len));
  }
  if (std::abs(zeta_.norm() - 1.0) > 1e-12 || std::abs(zeta_prime_.norm() - 1.0) > 1e-12) {
    throw ValidationError("vector functional: vectors must be unit vectors");
  }
}

VectorFunctional VectorFunctional::state(std::shared_ptr<const CrossedProduct> context,
                                         std::size_t radius, ComplexVector zeta) {
  ComplexVector copy = zeta;
  return VectorFunctional(std::move(context), radius, std::move(zeta), std::move(copy));
}

VectorFunctional VectorFunctional::random(std::shared_ptr<const CrossedProduct> context,
                                          std::size_t radius, Rng& rng) {
  const auto len =
      static_cast<Eigen::Index>(context->group().ball(radius).size()) * context->dim();
  ComplexVector a = random_unit_vector(rng, len);
  ComplexVector b = random_unit_vector(rng, len);
  return VectorFunctional(std::move(context), radius, std::move(a), std::move(b));
}

Complex VectorFunctional::operator()(const CrossedElement& z) const {
  if (z.context_ptr() != context_) {
    throw ModelMismatchError("vector functional: element from a different crossed product");
  }
  return zeta_.dot(assemble(z, *ball_) * zeta_prime_);
}

CrossedElement coaction_slice(const VectorFunctional& eta, const CrossedElement& z) {
  const CrossedProduct& ctx = z.context();
  const ComplexMatrix id = ComplexMatrix::Identity(ctx.dim(), ctx.dim());
  CrossedElement::Coefficients out;
  for (const auto& [g, x] : z.coefficients()) out.emplace(g, eta(ctx.monomial(x, g)) * id);
  return CrossedElement(z.context_ptr(), std::move(out));
}

CrossedElement random_element(const std::shared_ptr<const CrossedProduct>& context,
                              std::size_t radius, std::size_t terms, Rng& rng, bool scalar) {
  const Ball b = context->group().ball(radius);
  const Eigen::Index m = context->dim();
  CrossedElement::Coefficients out;
  for (std::size_t k = 0; k < terms; ++k) {
    const GroupElement& g = b.elements[uniform_index(rng, b.size())];
    ComplexMatrix x = scalar ? ComplexMatrix(complex_uniform(rng) * ComplexMatrix::Identity(m, m))
                             : context->triple().sample_element(rng);
    auto [it, inserted] = out.emplace(g, x);
    if (!inserted) it->second += x;
  }
  return CrossedElement(context, std::move(out));
}

}  // namespace crossmetric
