#include "crossmetric/monge_kantorovich.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "crossmetric/errors.hpp"

namespace crossmetric {

namespace {

std::string coords_label(const GroupElement& g) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < g.coords().size(); ++i) out << (i ? "," : "") << g.coords()[i];
  out << ")";
  return out.str();
}

// Greedy choice of real-linearly independent candidates.
std::vector<std::size_t> independent_subset(const std::vector<RealVector>& vecs, double tol) {
  std::vector<std::size_t> keep;
  std::vector<RealVector> ortho;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    RealVector v = vecs[i];
    const double scale = v.norm();
    if (scale == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : ortho) v -= q.dot(v) * q;
    }
    if (v.norm() > tol * scale) {
      ortho.push_back(v / v.norm());
      keep.push_back(i);
    }
  }
  return keep;
}

RealVector flatten(const CrossedElement& z, const Ball& ball) {
  const Eigen::Index m = z.context().dim();
  RealVector out = RealVector::Zero(static_cast<Eigen::Index>(ball.size()) * 2 * m * m);
  for (const auto& [g, x] : z.coefficients()) {
    const auto at = ball.find(g);
    if (!at) throw PreconditionError("flatten: element leaves the ball");
    out.segment(static_cast<Eigen::Index>(*at) * 2 * m * m, 2 * m * m) = realify(x);
  }
  return out;
}

RealMatrix null_space_of(const RealVector& sigma) {
  const auto k = sigma.size();
  if (sigma.norm() == 0.0) return RealMatrix::Identity(k, k);
  Eigen::JacobiSVD<RealMatrix> svd(RealMatrix(sigma.transpose()), Eigen::ComputeFullV);
  return svd.matrixV().rightCols(k - 1);
}

}  // namespace

MatrixSeminorm::MatrixSeminorm(std::vector<std::vector<ComplexMatrix>> images)
    : images_(std::move(images)) {
  if (images_.empty()) throw ValidationError("seminorm: no constituents");
  dimension_ = images_.front().size();
  for (const auto& c : images_) {
    if (c.size() != dimension_) throw ValidationError("seminorm: ragged constituent list");
    for (const auto& m : c) {
      if (m.rows() != c.front().rows() || m.cols() != c.front().cols()) {
        throw ValidationError("seminorm: images of one constituent must share a shape");
      }
    }
  }
}

ComplexMatrix MatrixSeminorm::combine(std::size_t j, const RealVector& theta) const {
  const auto& c = images_.at(j);
  ComplexMatrix out = ComplexMatrix::Zero(c.front().rows(), c.front().cols());
  for (std::size_t k = 0; k < dimension_; ++k) {
    if (theta(static_cast<Eigen::Index>(k)) != 0.0) {
      out += theta(static_cast<Eigen::Index>(k)) * c[k];
    }
  }
  return out;
}

double MatrixSeminorm::operator()(const RealVector& theta) const {
  double best = 0.0;
  for (std::size_t j = 0; j < images_.size(); ++j) {
    best = std::max(best, spectral_norm(combine(j, theta)));
  }
  return best;
}

RealVector MatrixSeminorm::subgradient(const RealVector& theta) const {
  std::size_t arg = 0;
  TopSingularSpace top;
  for (std::size_t j = 0; j < images_.size(); ++j) {
    TopSingularSpace t = top_singular_space(combine(j, theta));
    if (j == 0 || t.value > top.value) {
      top = std::move(t);
      arg = j;
    }
  }
  RealVector grad = RealVector::Zero(static_cast<Eigen::Index>(dimension_));
  if (top.left.empty()) return grad;
  const double w = 1.0 / static_cast<double>(top.left.size());
  for (std::size_t i = 0; i < top.left.size(); ++i) {
    for (std::size_t k = 0; k < dimension_; ++k) {
      grad(static_cast<Eigen::Index>(k)) +=
          w * top.left[i].dot(images_[arg][k] * top.right[i]).real();
    }
  }
  return grad;
}

std::size_t MatrixSeminorm::kernel_dimension(const std::optional<RealMatrix>& restrict,
                                             double tol) const {
  // Real Gram matrix of the stacked images, G_kl = Σ_j Re tr(A_j(B_k)* A_j(B_l)).
  const auto k = static_cast<Eigen::Index>(dimension_);
  RealMatrix gram = RealMatrix::Zero(k, k);
  for (const auto& c : images_) {
    for (Eigen::Index a = 0; a < k; ++a) {
      for (Eigen::Index b = a; b < k; ++b) {
        const double v = c[static_cast<std::size_t>(a)]
                             .cwiseProduct(c[static_cast<std::size_t>(b)].conjugate())
                             .sum()
                             .real();
        gram(a, b) += v;
        if (a != b) gram(b, a) += v;
      }
    }
  }
  const RealMatrix p = restrict ? *restrict : RealMatrix::Identity(k, k);
  const RealMatrix reduced = p.transpose() * gram * p;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(reduced);
  const RealVector eig = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const double threshold = tol * std::max(1.0, eig.size() ? eig.maxCoeff() : 0.0);
  std::size_t kernel = 0;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (eig(i) <= threshold) ++kernel;
  }
  return kernel;
}

const NamedState& FiniteSystem::state(const std::string& name) const {
  for (const auto& s : states) {
    if (s.name == name) return s;
  }
  throw PreconditionError("system " + this->name + " has no state '" + name + "'");
}

std::vector<ComplexMatrix> selfadjoint_basis(const std::vector<ComplexMatrix>& elements,
                                             double tol) {
  std::vector<ComplexMatrix> candidates;
  const Complex i(0.0, 1.0);
  for (const auto& a : elements) {
    candidates.push_back((a + a.adjoint()) / 2.0);
    candidates.push_back((a - a.adjoint()) / (2.0 * i));
  }
  std::vector<RealVector> vecs;
  for (const auto& c : candidates) vecs.push_back(realify(c));
  std::vector<ComplexMatrix> out;
  for (std::size_t k : independent_subset(vecs, tol)) out.push_back(candidates[k]);
  return out;
}

FiniteSystem scalar_sector(const MatrixLengthFunction& length, std::size_t r, std::size_t radius,
                           const std::vector<std::size_t>& folner_radii) {
  const auto& group = length.group_ptr();
  const auto ctx = CrossedProduct::group_algebra(group);
  const CrossedGeometry geometry(ctx, length);
  const Ball ball = group->ball(r);
  const Complex i(0.0, 1.0);

  std::vector<CrossedElement> basis;
  std::vector<std::string> labels;
  basis.push_back(ctx->one());
  labels.push_back("1");
  for (const auto& g : ball.elements) {
    if (g.is_identity()) continue;
    const GroupElement h = group->invert(g);
    if (h < g) continue;
    if (h == g) {
      basis.push_back(ctx->lambda(g));
      labels.push_back("re" + coords_label(g));
      continue;
    }
    basis.push_back(ctx->lambda(g) + ctx->lambda(h));
    labels.push_back("re" + coords_label(g));
    basis.push_back((ctx->lambda(g) - ctx->lambda(h)).scaled(i));
    labels.push_back("im" + coords_label(g));
  }

  std::vector<ComplexMatrix> images;
  for (const auto& b : basis) images.push_back(geometry.d_l(b, radius));

  std::vector<StateSpec> specs = {StateSpec::counit(), StateSpec::trace()};
  std::vector<std::string> names = {"counit", "trace"};
  for (std::size_t n : folner_radii) {
    specs.push_back(StateSpec::folner(group, std::make_shared<const Ball>(group->ball(n))));
    names.push_back("folner" + std::to_string(n));
  }

  FiniteSystem sys{"scalar_sector", labels, MatrixSeminorm({images}), RealVector(), {}, false};
  for (std::size_t s = 0; s < specs.size(); ++s) {
    RealVector v(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      v(static_cast<Eigen::Index>(k)) = specs[s](basis[k]).real();
    }
    sys.states.push_back({names[s], std::move(v)});
  }
  sys.sigma = sys.state("trace").values;
  return sys;
}

FiniteSystem base_system(const FiniteSpectralTriple& triple,
                         const std::optional<std::vector<ComplexMatrix>>& span) {
  const std::vector<ComplexMatrix> algebra =
      span ? *span
           : std::vector<ComplexMatrix>(triple.algebra_basis().begin(),
                                        triple.algebra_basis().end());
  const std::vector<ComplexMatrix> basis = selfadjoint_basis(algebra);
  std::vector<ComplexMatrix> images;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    images.push_back(triple.commutator(basis[k]));
    labels.push_back("b" + std::to_string(k));
  }
  FiniteSystem sys{"base", labels, MatrixSeminorm({images}), RealVector(), {}, true};
  const auto k = static_cast<Eigen::Index>(basis.size());
  if (const auto points = triple.point_count()) {
    for (std::size_t x = 0; x < *points; ++x) {
      const ComplexVector h = triple.point_vector(x);
      RealVector v(k);
      for (Eigen::Index j = 0; j < k; ++j) v(j) = h.dot(basis[static_cast<std::size_t>(j)] * h).real();
      sys.states.push_back({"point" + std::to_string(x), std::move(v)});
    }
  } else {
    const double m = static_cast<double>(triple.dim());
    RealVector tr(k);
    for (Eigen::Index j = 0; j < k; ++j) tr(j) = basis[static_cast<std::size_t>(j)].trace().real() / m;
    sys.states.push_back({"trace", std::move(tr)});
    for (Eigen::Index d = 0; d < triple.dim(); ++d) {
      RealVector v(k);
      for (Eigen::Index j = 0; j < k; ++j) v(j) = basis[static_cast<std::size_t>(j)](d, d).real();
      sys.states.push_back({"vector" + std::to_string(d), std::move(v)});
    }
  }
  sys.sigma = sys.states.front().values;
  return sys;
}

FiniteSystem crossed_system(const CrossedGeometry& geometry, std::size_t r, std::size_t radius) {
  const auto& ctx = geometry.context_ptr();
  const GroupModel& group = ctx->group();
  const Ball ball = group.ball(r);
  const FiniteSpectralTriple& base = ctx->triple();
  const Complex i(0.0, 1.0);

  std::vector<CrossedElement> candidates;
  for (const auto& g : ball.elements) {
    if (!ball.contains(group.invert(g))) continue;
    for (const auto& b : base.algebra_basis()) {
      const CrossedElement w = ctx->monomial(b, g);
      candidates.push_back((w + w.adjoint()).scaled(0.5));
      candidates.push_back((w - w.adjoint()).scaled(-0.5 * i));
    }
  }
  std::vector<RealVector> vecs;
  for (const auto& c : candidates) vecs.push_back(flatten(c, ball));
  std::vector<CrossedElement> basis;
  std::vector<std::string> labels;
  for (std::size_t k : independent_subset(vecs, 1e-10)) {
    basis.push_back(candidates[k]);
    labels.push_back("z" + std::to_string(k));
  }

  std::vector<std::vector<ComplexMatrix>> images(1);
  for (const auto& b : basis) images[0].push_back(geometry.d_l(b, radius));
  for (const auto& g : ball.elements) {
    std::vector<ComplexMatrix> horizontal;
    for (const auto& b : basis) horizontal.push_back(base.commutator(b.coefficient(g)));
    images.push_back(std::move(horizontal));
  }

  FiniteSystem sys{"crossed", labels, MatrixSeminorm(std::move(images)), RealVector(), {}, false};
  const auto k = static_cast<Eigen::Index>(basis.size());
  for (Eigen::Index d = 0; d < base.dim(); ++d) {
    RealVector v(k);
    for (Eigen::Index j = 0; j < k; ++j) {
      v(j) = conditional_expectation(basis[static_cast<std::size_t>(j)])(d, d).real();
    }
    sys.states.push_back({"vector" + std::to_string(d), std::move(v)});
  }
  sys.sigma = sys.states.front().values;
  return sys;
}

MKCertificate mk_lower(const FiniteSystem& system, const std::string& phi, const std::string& psi,
                       const MKOptions& options) {
  const RealVector f = system.state(phi).values - system.state(psi).values;
  MKCertificate cert;
  cert.seminorm_exact = system.seminorm_exact;
  const MatrixSeminorm& L = system.seminorm;
  const RealMatrix n = null_space_of(system.sigma);
  if (L.kernel_dimension(n) > 0) {
    throw DegenerateSeminormError("mk_lower: seminorm vanishes on a non-constant direction of " +
                                  system.name);
  }
  const RealVector g = n.transpose() * f;
  const double gg = g.squaredNorm();
  cert.argmax = RealVector::Zero(f.size());
  if (gg <= 1e-28) return cert;

  const RealVector u0 = g / gg;
  const double scale = u0.norm();
  const std::size_t starts = std::max<std::size_t>(1, options.starts);
  const std::size_t per_start = std::max<std::size_t>(1, options.budget / starts);
  Rng rng(options.seed);

  double best_l = std::numeric_limits<double>::infinity();
  RealVector best_u = u0;
  auto project = [&](RealVector v) { return RealVector(v - (g.dot(v) / gg) * g); };

  for (std::size_t start = 0; start < starts; ++start) {
    RealVector u = u0;
    if (start > 0) {
      RealVector noise(g.size());
      for (Eigen::Index j = 0; j < noise.size(); ++j) noise(j) = uniform_symmetric(rng);
      u += project(noise).normalized() * scale * uniform_unit(rng);
    }
    double local_l = L(n * u);
    RealVector local_u = u;
    double step = 0.25 * scale;
    std::size_t stale = 0;
    for (std::size_t it = 0; it < per_start && step > 1e-12 * scale; ++it) {
      const RealVector raw = n.transpose() * L.subgradient(n * u);
      const RealVector p = project(raw);
      const double pn = p.norm();
      // A subgradient parallel to g certifies a minimum on the slice.
      if (pn <= 1e-12 * std::max(1.0, raw.norm())) break;
      u -= step * p / pn;
      u += ((1.0 - g.dot(u)) / gg) * g;
      const double value = L(n * u);
      if (value < local_l - 1e-15 * local_l) {
        local_l = value;
        local_u = u;
        stale = 0;
      } else if (++stale >= 25) {
        step *= 0.5;
        u = local_u;
        stale = 0;
      }
    }
    if (local_l < best_l) {
      best_l = local_l;
      best_u = local_u;
    }
    cert.trace.push_back(1.0 / best_l);
  }
  cert.lower = 1.0 / best_l;
  cert.argmax = n * best_u / best_l;
  return cert;
}

CQMSReport cqms_finite_check(const FiniteSystem& system, const MKOptions& options) {
  CQMSReport rep;
  rep.kernel_dim = system.seminorm.kernel_dimension();
  if (rep.kernel_dim != 1) return rep;
  double best = 0.0;
  try {
    for (std::size_t a = 0; a < system.states.size(); ++a) {
      for (std::size_t b = a + 1; b < system.states.size(); ++b) {
        best = std::max(best, mk_lower(system, system.states[a].name, system.states[b].name,
                                       options).lower);
      }
    }
  } catch (const DegenerateSeminormError&) {
    return rep;
  }
  rep.diameter_bound = best / 2.0;
  rep.pass = true;
  return rep;
}

}  // namespace crossmetric
