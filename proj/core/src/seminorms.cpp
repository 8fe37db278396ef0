#include "crossmetric/seminorms.hpp"

#include <algorithm>
#include <cmath>

#include "crossmetric/errors.hpp"

namespace crossmetric {

namespace {

using BlockFn = std::function<ComplexMatrix(const GroupElement& g, std::size_t t, std::size_t s,
                                            const ComplexMatrix& twisted)>;

// Shared assembly loop: block (t, s) for t = g s receives fn(g, t, s, α_{t⁻¹}(x_g)).
ComplexMatrix assemble_blocks(const CrossedElement& z, const Ball& ball, Eigen::Index block,
                              const BlockFn& fn) {
  const CrossedProduct& ctx = z.context();
  const GroupModel& grp = ctx.group();
  const auto sites = static_cast<Eigen::Index>(ball.size());
  ComplexMatrix out = ComplexMatrix::Zero(sites * block, sites * block);
  const bool trivial = ctx.action().kind() == GroupAction::Kind::Trivial;
  const std::vector<ComplexMatrix> us =
      trivial ? std::vector<ComplexMatrix>{} : ctx.site_unitaries(ball);
  for (const auto& [g, x] : z.coefficients()) {
    for (std::size_t s = 0; s < ball.size(); ++s) {
      const auto t = ball.find(grp.multiply(g, ball.elements[s]));
      if (!t) continue;
      const ComplexMatrix a = trivial ? x : ComplexMatrix(us[*t] * x * us[*t].adjoint());
      out.block(static_cast<Eigen::Index>(*t) * block, static_cast<Eigen::Index>(s) * block,
                block, block) = fn(g, *t, s, a);
    }
  }
  return out;
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

// Operator norm of [[0, X], [Y, 0]] is max(||X||, ||Y||); keep the 2x2 form
// anyway so the per-radius matrix is the commutator itself.
ComplexMatrix off_diagonal(const ComplexMatrix& upper, const ComplexMatrix& lower) {
  const Eigen::Index n = upper.rows();
  ComplexMatrix out = ComplexMatrix::Zero(2 * n, 2 * n);
  out.topRightCorner(n, n) = upper;
  out.bottomLeftCorner(n, n) = lower;
  return out;
}

}  // namespace

CrossedGeometry::CrossedGeometry(std::shared_ptr<const CrossedProduct> context,
                                 MatrixLengthFunction length)
    : context_(std::move(context)), length_(std::move(length)) {
  if (!context_) throw ValidationError("geometry: missing crossed product");
  if (length_.group_ptr() != context_->group_ptr()) {
    throw ModelMismatchError("geometry: length function and crossed product use different groups");
  }
}

Eigen::Index CrossedGeometry::space_dim(std::size_t radius) const {
  return static_cast<Eigen::Index>(context_->group().ball(radius).size()) * leg() *
         context_->dim();
}

ComplexMatrix CrossedGeometry::dirac_truncation(std::size_t radius) const {
  const Ball b = context_->group().ball(radius);
  const Eigen::Index n = leg();
  const auto sites = static_cast<Eigen::Index>(b.size());
  ComplexMatrix out = ComplexMatrix::Zero(sites * n, sites * n);
  for (Eigen::Index s = 0; s < sites; ++s) {
    out.block(s * n, s * n, n, n) = length_(b.elements[static_cast<std::size_t>(s)]);
  }
  return out;
}

ComplexMatrix CrossedGeometry::dirac_with_base(std::size_t radius) const {
  return kron(dirac_truncation(radius), identity(context_->dim()));
}

ComplexMatrix CrossedGeometry::represent(const CrossedElement& z, std::size_t radius) const {
  if (z.context_ptr() != context_) throw ModelMismatchError("geometry: foreign element");
  const Ball b = context_->group().ball(radius);
  return assemble(z, b, leg());
}

ComplexMatrix CrossedGeometry::d_l(const CrossedElement& z, std::size_t radius) const {
  if (z.context_ptr() != context_) throw ModelMismatchError("geometry: foreign element");
  const Ball b = context_->group().ball(radius);
  std::vector<ComplexMatrix> ls;
  ls.reserve(b.size());
  for (const auto& s : b.elements) ls.push_back(length_(s));
  const Eigen::Index block = leg() * context_->dim();
  return assemble_blocks(z, b, block,
                         [&](const GroupElement&, std::size_t t, std::size_t s,
                             const ComplexMatrix& a) { return kron(ls[t] - ls[s], a); });
}

ComplexMatrix CrossedGeometry::d_H(const CrossedElement& z, std::size_t radius) const {
  if (z.context_ptr() != context_) throw ModelMismatchError("geometry: foreign element");
  const Ball b = context_->group().ball(radius);
  const FiniteSpectralTriple& base = context_->triple();
  const ComplexMatrix id = identity(leg());
  return assemble_blocks(z, b, leg() * context_->dim(),
                         [&](const GroupElement&, std::size_t, std::size_t,
                             const ComplexMatrix& a) { return kron(id, base.commutator(a)); });
}

SeminormReport CrossedGeometry::L_l(const CrossedElement& z,
                                    const std::vector<std::size_t>& schedule, double tol) const {
  return norm_report([&](std::size_t r) { return d_l(z, r); }, schedule, tol);
}

double CrossedGeometry::L_H_norm(const CrossedElement& z, const VerticalNorm& nvert) const {
  const FiniteSpectralTriple& base = context_->triple();
  if (std::holds_alternative<SupNorm>(nvert)) {
    double out = 0.0;
    for (const auto& [g, x] : z.coefficients()) out = std::max(out, base.lipschitz(x));
    return out;
  }
  const double p = std::get<LpNorm>(nvert).p;
  if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("nvert: lp exponent must be in [1, inf)");
  double sum = 0.0;
  for (const auto& [g, x] : z.coefficients()) sum += std::pow(base.lipschitz(x), p);
  return std::pow(sum, 1.0 / p);
}

SeminormReport CrossedGeometry::combined_L(const CrossedElement& z, const VerticalNorm& nvert,
                                           const std::vector<std::size_t>& schedule,
                                           double tol) const {
  SeminormReport rep = L_l(z, schedule, tol);
  const double horizontal = std::max(L_H_norm(z, nvert), L_H_norm(z.adjoint(), nvert));
  for (auto& [r, v] : rep.trace) v = std::max(v, horizontal);
  rep.value = std::max(rep.value, horizontal);
  return rep;
}

void CrossedGeometry::require_parities(const Parities& parities) const {
  if (parities.p != 0 && parities.p != 1) throw ValidationError("parities[0] must be 0 or 1");
  if (parities.q != 0 && parities.q != 1) throw ValidationError("parities[1] must be 0 or 1");
  if (parities.p != length_.parity()) {
    throw ValidationError("parities[0] = " + std::to_string(parities.p) +
                          " does not match the parity " + std::to_string(length_.parity()) +
                          " of length function '" + length_.name() + "'");
  }
  if (parities.q != context_->triple().parity()) {
    throw ValidationError("parities[1] = " + std::to_string(parities.q) +
                          " does not match the parity " +
                          std::to_string(context_->triple().parity()) + " of the base triple");
  }
}

TensorSumOperator CrossedGeometry::tensor_sum(const Parities& parities, std::size_t radius) const {
  require_parities(parities);
  TensorSumOperator op;
  op.parities = parities;
  op.ball = std::make_shared<const Ball>(context_->group().ball(radius));
  const auto sites = static_cast<Eigen::Index>(op.ball->size());
  const FiniteSpectralTriple& base = context_->triple();
  const ComplexMatrix a = dirac_with_base(radius);
  const ComplexMatrix b = kron(identity(sites * leg()), base.dirac());
  const Complex i(0.0, 1.0);
  if (parities.p == 1 && parities.q == 1) {
    op.doubled = true;
    op.matrix = off_diagonal(a + i * b, a - i * b);
    ComplexMatrix g = identity(2 * a.rows());
    g.bottomRightCorner(a.rows(), a.rows()) *= -1.0;
    op.grading = std::move(g);
  } else if (parities.p == 0) {
    const ComplexMatrix gl = kron(kron(identity(sites), *length_.grading()), identity(base.dim()));
    op.matrix = a + gl * b;
    if (parities.q == 0) {
      op.grading = kron(kron(identity(sites), *length_.grading()), *base.grading());
    }
  } else {
    const ComplexMatrix gb = kron(identity(sites * leg()), *base.grading());
    op.matrix = a * gb + b;
  }
  return op;
}

ComplexMatrix CrossedGeometry::tensor_commutator(const CrossedElement& z, const Parities& parities,
                                                 std::size_t radius) const {
  require_parities(parities);
  const ComplexMatrix dv = d_V(z, radius);
  const ComplexMatrix dh = d_H(z, radius);
  const auto sites = static_cast<Eigen::Index>(context_->group().ball(radius).size());
  const FiniteSpectralTriple& base = context_->triple();
  const Complex i(0.0, 1.0);
  if (parities.p == 1 && parities.q == 1) return off_diagonal(dv + i * dh, dv - i * dh);
  if (parities.p == 0) {
    const ComplexMatrix gl = kron(kron(identity(sites), *length_.grading()), identity(base.dim()));
    return dv + gl * dh;
  }
  const ComplexMatrix gb = kron(identity(sites * leg()), *base.grading());
  return dv * gb + dh;
}

SeminormReport CrossedGeometry::L_tensor(const CrossedElement& z, const Parities& parities,
                                         const std::vector<std::size_t>& schedule,
                                         double tol) const {
  require_parities(parities);
  return norm_report([&](std::size_t r) { return tensor_commutator(z, parities, r); }, schedule,
                     tol);
}

ComplexMatrix CrossedGeometry::T_s(const GroupElement& s) const {
  const FiniteSpectralTriple& base = context_->triple();
  const ComplexMatrix a = kron(length_(s), identity(base.dim()));
  const ComplexMatrix b = kron(identity(leg()), base.dirac());
  const Complex i(0.0, 1.0);
  return off_diagonal(a + i * b, a - i * b);
}

TensorSumAudit CrossedGeometry::audit_tensor_sum(const Parities& parities, std::size_t radius,
                                                 const std::vector<CrossedElement>& samples,
                                                 std::size_t ts_radius) const {
  TensorSumAudit audit;
  const TensorSumOperator op = tensor_sum(parities, radius);
  audit.selfadjoint_defect = hermitian_defect(op.matrix);
  if (op.grading) {
    audit.graded = true;
    const ComplexMatrix& g = *op.grading;
    audit.grading_anticommutator = max_abs(g * op.matrix + op.matrix * g);
    for (const auto& z : samples) {
      ComplexMatrix rep = represent(z, radius);
      if (op.doubled) {
        ComplexMatrix d = ComplexMatrix::Zero(2 * rep.rows(), 2 * rep.cols());
        d.topLeftCorner(rep.rows(), rep.cols()) = rep;
        d.bottomRightCorner(rep.rows(), rep.cols()) = rep;
        rep = std::move(d);
      }
      audit.grading_element_commutator =
          std::max(audit.grading_element_commutator, max_abs(g * rep - rep * g));
    }
  }
  for (const auto& s : context_->group().ball(ts_radius).elements) {
    audit.ts_selfadjoint_defect = std::max(audit.ts_selfadjoint_defect, hermitian_defect(T_s(s)));
  }
  constexpr double tol = 1e-12;
  audit.pass = audit.selfadjoint_defect <= tol && audit.grading_anticommutator <= tol &&
               audit.grading_element_commutator <= tol && audit.ts_selfadjoint_defect <= tol;
  return audit;
}

ResolventDiagnostic CrossedGeometry::resolvent_profile(const std::vector<std::size_t>& schedule,
                                                       double threshold) const {
  ResolventDiagnostic diag;
  diag.threshold = threshold;
  for (std::size_t r : schedule) {
    const auto eigs = hermitian_eigs(dirac_truncation(r));
    std::size_t count = 0;
    double smallest = 1.0;
    for (double lam : eigs) {
      const double sv = 1.0 / std::sqrt(1.0 + lam * lam);
      if (sv > threshold) ++count;
      smallest = std::min(smallest, sv);
    }
    diag.counts.emplace_back(r, count);
    diag.smallest.emplace_back(r, smallest);
  }
  const auto n = diag.counts.size();
  diag.stabilized = n >= 2 && diag.counts[n - 1].second == diag.counts[n - 2].second;
  return diag;
}

}  // namespace crossmetric
