// Acceptance criteria AC1-AC14. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "runner.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace crossmetric;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

void require(Result& r, bool ok, const std::string& what) {
  if (!ok && r.pass) r.detail = what;
  r.pass = r.pass && ok;
}

std::string fmt(double v) {
  std::ostringstream o;
  o << std::setprecision(6) << v;
  return o.str();
}

Result ac1() {
  Result r;
  auto z2 = GroupModel::free_abelian(2);
  for (std::int64_t n = -12; n <= 12; ++n) {
    for (std::int64_t m = -12; m <= 12; ++m) {
      const auto want = static_cast<std::size_t>(std::abs(n) + std::abs(m));
      require(r, z2->word_length(z2->element({n, m})) == want,
              "word length of (" + std::to_string(n) + "," + std::to_string(m) + ")");
    }
  }
  auto h = GroupModel::heisenberg3();
  require(r, h->word_length(h->element({0, 0, 1})) == 4, "central element length");
  r.detail = r.pass ? "625 Z^2 lengths exact, |(0,0,1)| = 4" : r.detail;
  return r;
}

Result ac2() {
  Result r;
  auto z2 = GroupModel::free_abelian(2);
  const CrossedGeometry geo(CrossedProduct::group_algebra(z2), MatrixLengthFunction::torus_z2(z2));
  const auto ev = hermitian_eigs(geo.dirac_truncation(4));
  std::vector<double> want;
  for (const auto& g : z2->ball(4).elements) {
    const double v = std::hypot(static_cast<double>(g.coords()[0]), static_cast<double>(g.coords()[1]));
    want.push_back(v);
    want.push_back(-v);
  }
  std::sort(want.begin(), want.end());
  require(r, ev.size() == want.size(), "spectrum size");
  double worst = 0.0;
  for (std::size_t i = 0; i < std::min(ev.size(), want.size()); ++i) {
    worst = std::max(worst, std::abs(ev[i] - want[i]));
  }
  require(r, worst <= 1e-9, "spectrum mismatch " + fmt(worst));
  if (r.pass) r.detail = "max deviation " + fmt(worst);
  return r;
}

Result ac3() {
  Result r;
  auto z = GroupModel::free_abelian(1);
  auto ctx = CrossedProduct::group_algebra(z);
  const CrossedGeometry geo(ctx, MatrixLengthFunction::word(z));
  double worst = 0.0;
  for (std::int64_t k : {1, 2, 5}) {
    const CrossedElement l = ctx->lambda(z->element({k}));
    for (std::size_t R = static_cast<std::size_t>(k + 1); R <= static_cast<std::size_t>(k + 4); ++R) {
      const double v = spectral_norm(geo.d_l(l, R));
      worst = std::max(worst, std::abs(v - static_cast<double>(k)));
    }
  }
  require(r, worst <= 1e-9, "deviation " + fmt(worst));
  if (r.pass) r.detail = "max deviation " + fmt(worst);
  return r;
}

Result ac4() {
  Result r;
  auto ctx = test::z2_matrix();
  const CrossedGeometry geo(ctx, MatrixLengthFunction::torus_z2(ctx->group_ptr()));
  Rng rng(404);
  for (int i = 0; i < 20; ++i) {
    const ComplexMatrix x = ctx->triple().sample_element(rng);
    const double v = spectral_norm(geo.d_l(ctx->monomial(x, ctx->group().identity()), 4));
    require(r, v == 0.0, "nonzero on pi(x) lambda_e: " + fmt(v));
  }
  const Ball ball = ctx->group().ball(3);
  double worst_ratio = std::numeric_limits<double>::infinity();
  int done = 0;
  while (done < 20) {
    const ComplexMatrix x = ctx->triple().sample_element(rng);
    const double sx = min_singular_value(x);
    if (sx < 1e-3) continue;
    const GroupElement& g = ball.elements[1 + uniform_index(rng, ball.size() - 1)];
    const double v = spectral_norm(geo.d_l(ctx->monomial(x, g), 4));
    const double floor = min_singular_value(geo.length()(g)) * sx;
    worst_ratio = std::min(worst_ratio, v / floor);
    require(r, v > 0.1 * floor, "below floor at g");
    ++done;
  }
  if (r.pass) r.detail = "min L/(sigma(l(g)) sigma(x)) = " + fmt(worst_ratio);
  return r;
}

Result ac5() {
  Result r;
  Rng rng(505);
  std::vector<std::shared_ptr<const GroupModel>> groups = {
      GroupModel::free_abelian(1), GroupModel::free_abelian(2), GroupModel::heisenberg3()};
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto& g = groups[static_cast<std::size_t>(i) % 3];
    const Ball f = g->ball(uniform_index(rng, 4));
    const Ball reach = g->ball(3);
    const GroupElement& h = reach.elements[uniform_index(rng, reach.size())];
    worst = std::max(worst, std::abs(chi_coefficient(*g, f, h) - chi_vector_state(g, f, h)));
  }
  require(r, worst <= 1e-12, "deviation " + fmt(worst));
  if (r.pass) r.detail = "max deviation " + fmt(worst);
  return r;
}

Result ac6() {
  Result r;
  const std::vector<std::size_t> schedule = {2, 3, 4};
  std::size_t comparisons = 0;
  double worst = -std::numeric_limits<double>::infinity();
  Rng rng(606);
  for (auto ctx : {test::z2_matrix(), test::z_three_points()}) {
    const CrossedGeometry geo(ctx, ctx->group().family() == GroupFamily::FreeAbelian &&
                                           ctx->group_ptr()->identity().coords().size() == 2
                                       ? MatrixLengthFunction::torus_z2(ctx->group_ptr())
                                       : MatrixLengthFunction::word(ctx->group_ptr()));
    for (int i = 0; i < 15; ++i) {
      const CrossedElement z = random_element(ctx, 1 + static_cast<std::size_t>(i % 3), 1 + static_cast<std::size_t>(i % 4), rng);
      const Ball f = ctx->group().ball(1 + static_cast<std::size_t>(i % 2));
      for (std::size_t R : schedule) {
        const CheckReport rep = contraction_check(geo, f, z, R, 1e-10);
        worst = std::max(worst, rep.lhs - rep.rhs);
        require(r, rep.pass, "contraction fails at R=" + std::to_string(R));
        ++comparisons;
      }
    }
  }
  if (r.pass) r.detail = std::to_string(comparisons) + " comparisons, max excess " + fmt(worst);
  return r;
}

Result ac7() {
  Result r;
  Rng rng(707);
  auto ctx = test::z2_swap();
  const CrossedGeometry geo(ctx, MatrixLengthFunction::torus_z2(ctx->group_ptr()));
  double worst_id = 0.0, worst_bound = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 30; ++i) {
    const std::size_t support = 1 + static_cast<std::size_t>(i % 3);
    const CrossedElement z = random_element(ctx, support, 3, rng);
    const auto eta = VectorFunctional::random(ctx, 2, rng);
    const Ball f = ctx->group().ball(static_cast<std::size_t>(i % 4));
    const CheckReport id = approximation_identity_check(eta, f, z, 1e-10);
    worst_id = std::max(worst_id, id.lhs);
    require(r, id.pass, "identity deviation " + fmt(id.lhs));
    const CheckReport b = approximation_bound_check(geo, f, z, support, {support + 1, support + 2}, 1e-8);
    worst_bound = std::max(worst_bound, b.lhs - b.rhs);
    require(r, b.pass, "bound " + fmt(b.lhs) + " > " + fmt(b.rhs));
  }
  if (r.pass) r.detail = "identity max " + fmt(worst_id) + ", bound max excess " + fmt(worst_bound);
  return r;
}

Result ac8() {
  Result r;
  auto z = GroupModel::free_abelian(1);
  const auto lz = MatrixLengthFunction::word(z);
  const FolnerTable t = folner_convergence(lz, 3, 1, 12);
  require(r, t.strictly_decreasing, "Z table not strictly decreasing");
  require(r, t.rows.back().rho_hat < 0.35 * t.rows.front().rho_hat, "n=12 not below 0.35 n=1");
  for (const auto& row : t.rows) {
    const Ball f = z->ball(row.n);
    const auto den = static_cast<std::int64_t>(2 * row.n + 1);
    for (std::int64_t k = -3; k <= 3; ++k) {
      require(r, z->folner_overlap(f, z->element({k})) == make_rational(den - std::abs(k), den),
              "closed-form coefficient");
    }
    require(r, std::abs(row.rho_hat - std::sqrt(6.0) / static_cast<double>(den)) <= 1e-14,
            "closed-form rho_hat");
  }
  const FolnerTable h = folner_convergence(MatrixLengthFunction::word(GroupModel::heisenberg3()), 2, 2, 8);
  require(r, h.strictly_decreasing, "Heisenberg table not strictly decreasing");
  if (r.pass) {
    r.detail = "Z: " + fmt(t.rows.front().rho_hat) + " -> " + fmt(t.rows.back().rho_hat) +
               "; H3: " + fmt(h.rows.front().rho_hat) + " -> " + fmt(h.rows.back().rho_hat);
  }
  return r;
}

Result ac9() {
  Result r;
  const auto l = MatrixLengthFunction::word(GroupModel::free_abelian(1));
  double sum = 0.0, worst = 0.0, at2 = 0.0;
  for (std::size_t k = 1; k <= 10; ++k) {
    sum += 1.0 / static_cast<double>(k * k);
    const double v = mk_upper(l, trace_coefficients(), k);
    worst = std::max(worst, std::abs(v - std::sqrt(2.0 * sum)));
    if (k == 2) at2 = v;
  }
  require(r, worst <= 1e-12, "deviation " + fmt(worst));
  require(r, std::abs(at2 - std::sqrt(2.5)) <= 1e-12, "r = 2 value");
  if (r.pass) r.detail = "r=2 value " + fmt(at2) + ", max deviation " + fmt(worst);
  return r;
}

struct ParityCase {
  Parities parities;
  bool torus;
  bool graded;
};

const std::vector<ParityCase> kParityCases = {
    {{1, 1}, false, false}, {{0, 0}, true, true}, {{0, 1}, true, false}, {{1, 0}, false, true}};

CrossedGeometry parity_geometry(const ParityCase& pc) {
  auto ctx = test::z2_swap(pc.graded);
  return CrossedGeometry(ctx, pc.torus ? MatrixLengthFunction::torus_z2(ctx->group_ptr())
                                       : MatrixLengthFunction::word(ctx->group_ptr()));
}

Result ac10() {
  Result r;
  Rng rng(1010);
  const std::vector<std::size_t> schedule = {1, 2, 3};
  double ratio = 0.0;
  for (const auto& pc : kParityCases) {
    const CrossedGeometry geo = parity_geometry(pc);
    geo.require_parities(pc.parities);
    for (int i = 0; i < 30; ++i) {
      const CrossedElement z = random_element(geo.context_ptr(), 1, 1 + static_cast<std::size_t>(i % 3), rng);
      for (std::size_t R : schedule) {
        const double dv = spectral_norm(geo.d_V(z, R));
        const double dh = spectral_norm(geo.d_H(z, R));
        const double lt = spectral_norm(geo.tensor_commutator(z, pc.parities, R));
        const double m = std::max(dv, dh);
        require(r, m <= lt + 1e-8, "lower sandwich fails");
        require(r, lt <= 2.0 * m + 1e-6, "upper sandwich fails");
        if (m > 0.0) ratio = std::max(ratio, lt / m);
      }
    }
  }
  if (r.pass) r.detail = "4 parity pairs x 30 elements, max L_tensor/max = " + fmt(ratio);
  return r;
}

Result ac11() {
  Result r;
  Rng rng(1111);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& pc : {kParityCases[0], kParityCases[1]}) {
    const CrossedGeometry geo = parity_geometry(pc);
    for (int i = 0; i < 15; ++i) {
      const CrossedElement z = random_element(geo.context_ptr(), 1 + static_cast<std::size_t>(i % 2), 3, rng);
      const std::size_t R = z.support_length() + 1;
      const double lh = geo.L_H_norm(z);
      const double dh = spectral_norm(geo.d_H(z, R));
      worst = std::max(worst, lh - dh);
      require(r, lh <= dh + 1e-8, "domination fails");
    }
  }
  if (r.pass) r.detail = "max L_H - ||d_H|| = " + fmt(worst);
  return r;
}

Result ac12() {
  Result r;
  Rng rng(1212);
  double worst = 0.0;
  for (const auto& pc : kParityCases) {
    const CrossedGeometry geo = parity_geometry(pc);
    std::vector<CrossedElement> samples;
    for (int i = 0; i < 5; ++i) samples.push_back(random_element(geo.context_ptr(), 1, 3, rng));
    const TensorSumAudit a = geo.audit_tensor_sum(pc.parities, 3, samples, 3);
    worst = std::max({worst, a.selfadjoint_defect, a.grading_anticommutator,
                      a.grading_element_commutator, a.ts_selfadjoint_defect});
    require(r, a.pass, "audit fails for parities (" + std::to_string(pc.parities.p) + "," +
                           std::to_string(pc.parities.q) + ")");
    // Even operators exist exactly when the parities agree.
    require(r, a.graded == (pc.parities.p == pc.parities.q), "unexpected grading");
  }
  require(r, worst <= 1e-12, "defect " + fmt(worst));
  if (r.pass) r.detail = "max defect " + fmt(worst);
  return r;
}

// Brute-force maxima of (φ - ψ)(θ) / L(θ), one per φ, over a grid on the cube
// boundary of the σ-null coordinates. L is evaluated once per grid point.
std::vector<double> grid_oracle(const FiniteSystem& sys, const std::vector<std::string>& phis,
                                const std::string& psi, int steps) {
  std::vector<RealVector> diffs;
  for (const auto& phi : phis) diffs.push_back(sys.state(phi).values - sys.state(psi).values);
  const Eigen::Index k = diffs.front().size();
  // σ is the trace, i.e. the coefficient of the first basis element.
  const Eigen::Index free = k - 1;
  std::vector<int> idx(static_cast<std::size_t>(free), 0);
  std::vector<double> best(phis.size(), 0.0);
  const auto coord = [&](int i) { return -1.0 + 2.0 * i / steps; };
  while (true) {
    bool on_boundary = false;
    RealVector theta = RealVector::Zero(k);
    for (Eigen::Index j = 0; j < free; ++j) {
      const int i = idx[static_cast<std::size_t>(j)];
      on_boundary = on_boundary || i == 0 || i == steps;
      theta(j + 1) = coord(i);
    }
    bool useful = false;
    for (const auto& f : diffs) useful = useful || f.dot(theta) > 0.0;
    if (on_boundary && useful) {
      const double l = sys.seminorm(theta);
      for (std::size_t p = 0; p < diffs.size() && l > 0.0; ++p) {
        best[p] = std::max(best[p], diffs[p].dot(theta) / l);
      }
    }
    Eigen::Index j = 0;
    while (j < free && ++idx[static_cast<std::size_t>(j)] > steps) idx[static_cast<std::size_t>(j++)] = 0;
    if (j == free) break;
  }
  return best;
}

Result ac13() {
  Result r;
  std::ostringstream detail;
  for (double d : {1.0, 2.0}) {
    const FiniteSystem base = base_system(FiniteSpectralTriple::lip_triple(test::two_points(d)));
    const MKCertificate c = mk_lower(base, "point0", "point1", {10000, 4, 13});
    require(r, c.lower <= d * (1 + 1e-9) && c.lower >= 0.99 * d, "two-point distance " + fmt(d));
    detail << "d=" << d << ": " << fmt(c.lower) << "; ";
  }
  struct Sector {
    std::string label;
    std::shared_ptr<const GroupModel> group;
    bool torus;
    std::size_t r;
  };
  const std::vector<Sector> sectors = {{"Z r=2", GroupModel::free_abelian(1), false, 2},
                                       {"Z^2 torus r=1", GroupModel::free_abelian(2), true, 1}};
  for (const auto& s : sectors) {
    const auto l = s.torus ? MatrixLengthFunction::torus_z2(s.group) : MatrixLengthFunction::word(s.group);
    const FiniteSystem sys = scalar_sector(l, s.r, 3, {1, 2});
    require(r, sys.seminorm.dimension() <= 5, "sector dimension");
    const std::vector<std::string> phis = {"trace", "folner1", "folner2"};
    const std::vector<double> grids = grid_oracle(sys, phis, "counit", 24);
    for (std::size_t p = 0; p < phis.size(); ++p) {
      const std::string& phi = phis[p];
      const double grid = grids[p];
      const double lower = mk_lower(sys, phi, "counit", {10000, 4, 17}).lower;
      require(r, std::abs(lower - grid) <= 0.02 * grid,
              s.label + " " + phi + ": mk " + fmt(lower) + " vs grid " + fmt(grid));
      detail << s.label << " " << phi << ": " << fmt(lower) << "/" << fmt(grid) << "; ";
    }
  }
  if (r.pass) r.detail = detail.str();
  return r;
}

Result ac14() {
  Result r;
  const fs::path config = fs::path(CROSSMETRIC_SOURCE_DIR) / "scenarios/z2_torus.toml";
  const fs::path root = fs::temp_directory_path() / "crossmetric_acceptance";
  fs::remove_all(root);
  std::vector<fs::path> dirs = {root / "a", root / "b"};
  for (const auto& d : dirs) {
    std::ostringstream o, e;
    runner::RunOptions opts;
    opts.config = config;
    opts.out = d;
    const int code = runner::run(opts, o, e);
    require(r, code == 0, "bundled scenario exit code " + std::to_string(code) + " " + e.str());
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(dirs[0])) {
    const auto ext = entry.path().extension();
    if (ext != ".json" && ext != ".csv") continue;
    std::ifstream a(entry.path(), std::ios::binary), b(dirs[1] / entry.path().filename(), std::ios::binary);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    require(r, sa.str() == sb.str(), "differs: " + entry.path().filename().string());
    ++compared;
  }
  require(r, compared >= 11, "too few outputs");
  if (r.pass) r.detail = std::to_string(compared) + " JSON/CSV files byte-identical, exit 0";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"AC1", ac1},   {"AC2", ac2},   {"AC3", ac3},   {"AC4", ac4},   {"AC5", ac5},
      {"AC6", ac6},   {"AC7", ac7},   {"AC8", ac8},   {"AC9", ac9},   {"AC10", ac10},
      {"AC11", ac11}, {"AC12", ac12}, {"AC13", ac13}, {"AC14", ac14}};
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result res;
    try {
      res = fn();
    } catch (const std::exception& e) {
      res = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << name << " " << (res.pass ? "PASS" : "FAIL") << " (" << std::fixed
              << std::setprecision(2) << secs << " s) " << res.detail << std::endl;
    std::cout.unsetf(std::ios::fixed);
    if (!res.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
