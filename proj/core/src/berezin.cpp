#include "crossmetric/berezin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crossmetric/errors.hpp"

namespace crossmetric {

double chi_coefficient(const GroupModel& group, const Ball& f, const GroupElement& g) {
  return group.folner_overlap(f, g).value();
}

double chi_vector_state(const std::shared_ptr<const GroupModel>& group, const Ball& f,
                        const GroupElement& g) {
  if (f.elements.empty()) throw PreconditionError("Følner set must be nonempty");
  const auto ctx = CrossedProduct::group_algebra(group);
  const std::size_t radius = 2 * f.radius + group->word_length(g);
  const TruncatedOperator op = truncated_matrix(ctx->lambda(g), radius);
  ComplexVector xi = ComplexVector::Zero(op.matrix.rows());
  const double w = 1.0 / std::sqrt(static_cast<double>(f.size()));
  for (const auto& s : f.elements) xi(static_cast<Eigen::Index>(*op.ball->find(s))) = w;
  return xi.dot(op.matrix * xi).real();
}

CrossedElement berezin(const Ball& f, const CrossedElement& z) {
  const GroupModel& grp = z.context().group();
  return z.map_coefficients([&](const GroupElement& g, const ComplexMatrix& x) {
    return ComplexMatrix(chi_coefficient(grp, f, g) * x);
  });
}

StateSpec StateSpec::counit() { return StateSpec(Kind::Counit); }

StateSpec StateSpec::trace() { return StateSpec(Kind::Trace); }

StateSpec StateSpec::folner(std::shared_ptr<const GroupModel> group,
                            std::shared_ptr<const Ball> f) {
  if (!group || !f || f->elements.empty()) {
    throw PreconditionError("Følner state needs a nonempty set");
  }
  StateSpec s(Kind::Folner);
  s.group_ = std::move(group);
  s.folner_ = std::move(f);
  return s;
}

StateSpec StateSpec::vector(VectorFunctional functional) {
  if (functional.zeta() != functional.zeta_prime()) {
    throw ValidationError("vector state: zeta and zeta' must coincide");
  }
  StateSpec s(Kind::Vector);
  s.vector_ = std::move(functional);
  return s;
}

std::string StateSpec::name() const {
  switch (kind_) {
    case Kind::Counit:
      return "counit";
    case Kind::Trace:
      return "trace";
    case Kind::Folner:
      return "folner(" + std::to_string(folner_->radius) + ")";
    case Kind::Vector:
      return "vector";
  }
  return "state";
}

const Ball& StateSpec::folner_set() const {
  if (!folner_) throw PreconditionError("state has no Følner set");
  return *folner_;
}

Complex StateSpec::operator()(const CrossedElement& z) const {
  if (kind_ == Kind::Vector) return (*vector_)(z);
  Complex sum = 0.0;
  for (const auto& [g, x] : z.coefficients()) {
    const Complex c = z.scalar_coefficient(g);
    switch (kind_) {
      case Kind::Counit:
        sum += c;
        break;
      case Kind::Trace:
        if (g.is_identity()) sum += c;
        break;
      case Kind::Folner:
        sum += chi_coefficient(*group_, *folner_, g) * c;
        break;
      case Kind::Vector:
        break;
    }
  }
  return sum;
}

CheckReport contraction_check(const CrossedGeometry& geometry, const Ball& f,
                              const CrossedElement& z, std::size_t radius, double slack) {
  CheckReport rep;
  rep.check = "berezin-contraction";
  rep.radius = radius;
  rep.slack = slack;
  rep.lhs = spectral_norm(geometry.d_l(berezin(f, z), radius));
  rep.rhs = spectral_norm(geometry.d_l(z, radius));
  rep.pass = rep.lhs <= rep.rhs + slack;
  return rep;
}

CheckReport slice_contraction_check(const CrossedGeometry& geometry, const VectorFunctional& eta,
                                    const CrossedElement& z, std::size_t radius,
                                    std::size_t radius_prime, double slack,
                                    std::size_t max_escalations) {
  CheckReport rep;
  rep.check = "slice-contraction";
  rep.slack = slack;
  rep.lhs = spectral_norm(geometry.d_l(coaction_slice(eta, z), radius));
  std::size_t rp = std::max(radius, radius_prime);
  for (std::size_t attempt = 0;; ++attempt) {
    rep.rhs = spectral_norm(geometry.d_l(z, rp));
    rep.radius = rp;
    rep.pass = rep.lhs <= rep.rhs + slack;
    if (rep.pass || attempt >= max_escalations) break;
    ++rp;
  }
  return rep;
}

CheckReport approximation_identity_check(const VectorFunctional& eta, const Ball& f,
                                         const CrossedElement& z, double slack) {
  CheckReport rep;
  rep.check = "approximation-identity";
  rep.radius = eta.radius();
  rep.slack = slack;
  const Complex left = eta(berezin(f, z) - z);
  const CrossedElement s = coaction_slice(eta, z);
  const GroupModel& grp = z.context().group();
  Complex right = 0.0;
  for (const auto& [g, x] : s.coefficients()) {
    right += (chi_coefficient(grp, f, g) - 1.0) * s.scalar_coefficient(g);
  }
  rep.lhs = std::abs(left - right);
  rep.rhs = std::max(std::abs(left), std::abs(right));
  rep.pass = rep.lhs <= slack;
  return rep;
}

CoefficientMap folner_coefficients(std::shared_ptr<const GroupModel> group,
                                   std::shared_ptr<const Ball> f) {
  return [group = std::move(group), f = std::move(f)](const GroupElement& g) {
    return chi_coefficient(*group, *f, g);
  };
}

CoefficientMap trace_coefficients() {
  return [](const GroupElement& g) { return g.is_identity() ? 1.0 : 0.0; };
}

double mk_upper(const MatrixLengthFunction& length, const CoefficientMap& c, std::size_t r) {
  const Ball b = length.group().ball(r);
  double sum = 0.0;
  for (const auto& g : b.elements) {
    if (g.is_identity()) continue;
    const double gap = 1.0 - c(g);
    if (gap == 0.0) continue;
    const double sigma = min_singular_value(length(g));
    if (!(sigma > 0.0)) {
      throw PreconditionError("mk_upper: length value is singular inside ball(" +
                              std::to_string(r) + ")");
    }
    sum += gap * gap / (sigma * sigma);
  }
  return std::sqrt(sum);
}

CheckReport approximation_bound_check(const CrossedGeometry& geometry, const Ball& f,
                                      const CrossedElement& z, std::size_t r,
                                      const std::vector<std::size_t>& schedule, double slack) {
  if (z.support_length() > r) {
    throw PreconditionError("approximation bound: support leaves ball(" + std::to_string(r) + ")");
  }
  const auto& group = geometry.context().group_ptr();
  auto fptr = std::make_shared<const Ball>(f);
  const double rho = mk_upper(geometry.length(), folner_coefficients(group, fptr), r);
  const SeminormReport l = geometry.L_l(z, schedule);
  CheckReport rep;
  rep.check = "approximation-bound";
  rep.radius = schedule.back();
  rep.slack = slack;
  rep.lhs = spectral_norm(truncated_matrix(berezin(f, z) - z, rep.radius).matrix);
  rep.rhs = rho * l.value;
  rep.pass = rep.lhs <= rep.rhs + slack;
  return rep;
}

FolnerTable folner_convergence(const MatrixLengthFunction& length, std::size_t r,
                               std::size_t n_min, std::size_t n_max) {
  if (n_min > n_max) throw PreconditionError("folner_convergence: empty range");
  FolnerTable table;
  table.r = r;
  table.group = length.group().name();
  table.length = length.name();
  for (std::size_t n = n_min; n <= n_max; ++n) {
    auto f = std::make_shared<const Ball>(length.group().ball(n));
    table.rows.push_back(
        {n, mk_upper(length, folner_coefficients(length.group_ptr(), std::move(f)), r)});
  }
  table.strictly_decreasing = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (!(table.rows[i].rho_hat < table.rows[i - 1].rho_hat)) table.strictly_decreasing = false;
  }
  return table;
}

}  // namespace crossmetric
