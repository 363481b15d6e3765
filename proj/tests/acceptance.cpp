// Acceptance run: one PASS/FAIL/SKIPPED line per criterion.
//
//   acceptance [--expect-fail N ...]
//
// Exit status is 0 iff the set of failing criteria equals the expected set, so a
// documented failure keeps failing visibly while anything else breaking, or the
// documented failure starting to pass, is reported by the exit status.
#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "whakit/actions.hpp"
#include "whakit/fixtures.hpp"
#include "whakit/io.hpp"
#include "whakit/report.hpp"

using namespace whakit;

namespace {

const std::string kM2M3Path = std::string(WHAKIT_FIXTURE_DIR) + "/m2_m3.wha.json";

struct Named {
  std::string name;
  WeakHopfAlgebra h;
};

struct Outcome {
  std::vector<std::string> failures;
  std::string summary;
  bool skipped = false;
  int checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << x;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool m2_m3_present() { return std::filesystem::exists(kM2M3Path); }

std::vector<Named> groupoid_fixtures() {
  std::vector<Named> out;
  for (int n = 2; n <= 5; ++n) out.push_back({"Z" + std::to_string(n), make_fixture("cyclic", n)});
  out.push_back({"S3", make_fixture("s3")});
  for (int n = 2; n <= 4; ++n) out.push_back({"pair" + std::to_string(n), make_fixture("pair-groupoid", n)});
  out.push_back({"pair2+Z2", make_fixture("groupoid-union", 2)});
  out.push_back({"pair3+Z2", make_fixture("groupoid-union", 3)});
  return out;
}

// Groupoid algebras, their duals and Sweedler's algebra.
std::vector<Named> shipped_fixtures() {
  std::vector<Named> out = groupoid_fixtures();
  const std::size_t groupoids = out.size();
  for (std::size_t i = 0; i < groupoids; ++i) out.push_back({"dual " + out[i].name, dual_wha(out[i].h)});
  out.push_back({"H4", make_fixture("sweedler-h4")});
  return out;
}

bool is_c_star(const WeakHopfAlgebra& h) {
  if (!h.algebra().has_involution()) return false;
  try {
    return validate_star(h).ok;
  } catch (const Error&) {
    return false;
  }
}

std::vector<Named> c_star_fixtures(bool with_m2_m3) {
  std::vector<Named> out;
  for (Named& f : shipped_fixtures())
    if (is_c_star(f.h)) out.push_back(std::move(f));
  if (with_m2_m3 && m2_m3_present()) out.push_back({"M2+M3", load_wha(kM2M3Path)});
  return out;
}

// ---------------------------------------------------------------------------

// Rebuilds w with one coefficient shifted: product constants first, then the
// comultiplication, then the counit.
WeakBialgebra shifted(const WeakBialgebra& w, int index, double by) {
  const int n = w.dim();
  const FinDimAlgebra& a = w.algebra();
  std::vector<Mat> left(n);
  for (int i = 0; i < n; ++i) left[i] = a.left(i);
  Mat delta = w.comultiplication();
  Vec eps = w.counit();
  const int n3 = n * n * n;
  if (index < n3) {
    left[index / (n * n)]((index / n) % n, index % n) += by;
  } else if (index < 2 * n3) {
    const int k = index - n3;
    delta(k / n, k % n) += by;
  } else {
    eps(index - 2 * n3) += by;
  }
  std::optional<Mat> inv;
  if (a.has_involution()) inv = a.involution();
  return WeakBialgebra(FinDimAlgebra(a.labels(), left, a.unit(), inv), delta, eps);
}

Outcome axiom_gate() {
  Outcome o;
  constexpr int kSampled = 120;
  Rng rng(20240611);
  int perturbations = 0;
  double slowest = 0.0;
  for (const Named& f : shipped_fixtures()) {
    const auto t0 = std::chrono::steady_clock::now();
    const ValidationReport v = validate_wba(f.h.wba);
    const double t = seconds_since(t0);
    slowest = std::max(slowest, t);
    o.expect(v.ok, f.name + " is rejected");
    o.expect(t < 1.0, f.name + " validation takes " + num(t) + " s");

    const int n = f.h.dim();
    const int total = 2 * n * n * n + n;
    std::vector<int> indices;
    if (total <= 3 * kSampled) {
      for (int i = 0; i < total; ++i) indices.push_back(i);
    } else {
      for (int s = 0; s < kSampled; ++s) indices.push_back(static_cast<int>(rng.index(total)));
    }
    for (int index : indices) {
      const ValidationReport p = validate_wba(shifted(f.h.wba, index, 1e-3));
      bool named = false;
      for (const AxiomResidual& a : p.axioms) named = named || !a.passed;
      o.expect(!p.ok && named, f.name + " accepts a shift of coefficient " + std::to_string(index));
      ++perturbations;
    }
  }
  // Designed to fail: C[Z_2] with eps(g) = 0.9.
  const WeakHopfAlgebra z2 = make_fixture("cyclic", 2);
  Vec eps = z2.wba.counit();
  eps(1) = 0.9;
  const ValidationReport bad = validate_wba(WeakBialgebra(z2.algebra(), z2.wba.comultiplication(), eps));
  o.expect(!bad.ok && bad.find("counit") && !bad.find("counit")->passed, "rescaled counit is not rejected by name");
  o.summary = std::to_string(shipped_fixtures().size()) + " fixtures valid, " + std::to_string(perturbations) +
              " perturbations rejected, slowest validation " + num(slowest) + " s";
  return o;
}

Outcome antipode() {
  Outcome o;
  double worst = 0.0, margin = 1e300;
  for (const Named& f : shipped_fixtures()) {
    const AntipodeSolution s = solve_antipode(f.h.wba);
    worst = std::max({worst, s.residual, s.third_axiom_residual});
    margin = std::min(margin, s.uniqueness_margin);
    o.expect(s.residual < 1e-9, f.name + " residual " + num(s.residual));
    o.expect(s.uniqueness_margin > 1e-6, f.name + " homogeneous kernel is not trivial");
    o.expect(s.third_axiom_residual < 1e-9, f.name + " S(a1)a2S(a3) = S(a) residual " + num(s.third_axiom_residual));
    o.expect(check_antipode(f.h.wba, s.antipode).ok, f.name + " solved antipode fails the post-check");
  }
  o.summary = "worst residual " + num(worst) + ", smallest uniqueness margin " + num(margin);
  return o;
}

Outcome maschke() {
  Outcome o;
  int semisimple = 0, total = 0;
  for (const Named& f : shipped_fixtures()) {
    const bool ss = is_semisimple(f.h.algebra());
    const bool integral = normalized_left_integral(f.h).has_value();
    o.expect(ss == integral, f.name + ": semisimple " + std::to_string(ss) + ", integral " + std::to_string(integral));
    const MaschkeReport r = maschke_check(f.h);
    o.expect(r.semisimple == ss && r.normalized_integral_exists == integral, f.name + " report disagrees");
    if (f.name == "H4") o.expect(!ss && !integral, "H4 is reported semisimple");
    semisimple += ss;
    ++total;
  }
  o.summary = std::to_string(total) + " fixtures agree, " + std::to_string(total - semisimple) + " non-semisimple";
  return o;
}

Outcome haar() {
  Outcome o;
  for (const Named& f : shipped_fixtures()) {
    const HaarCriterion c = haar_criterion(f.h);
    o.expect(c.criterion == haar_integral(f.h).has_value(), f.name + " criterion disagrees with existence");
  }
  int n = 0;
  for (const Named& f : c_star_fixtures(false)) {
    const std::optional<HaarIntegral> h = haar_integral(f.h);
    o.expect(h.has_value(), f.name + " has no Haar integral");
    if (!h) continue;
    const Vec star = f.h.algebra().star(h->h);
    o.expect(max_abs(h->h - star) < 1e-9, f.name + " |h - h*| " + num(max_abs(h->h - star)));
    o.expect(h->idempotent_residual < 1e-9, f.name + " |h - h^2| " + num(h->idempotent_residual));
    o.expect(h->antipode_residual < 1e-9, f.name + " |h - S(h)| " + num(h->antipode_residual));
    const Mat g = haar_inner_product(f.h, h->h);
    const Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g + g.adjoint()));
    const RealVec ev = es.eigenvalues();
    o.expect(ev.minCoeff() > 1e-12 * ev.maxCoeff(), f.name + " Gram matrix is not positive definite");
    ++n;
  }
  o.summary = std::to_string(n) + " C* fixtures, criterion matches existence on all fixtures";
  return o;
}

Outcome grouplike() {
  Outcome o;
  int kac = 0, n = 0;
  for (const Named& f : c_star_fixtures(true)) {
    const HaarData d = haar_data(f.h);
    const bool weak_kac = is_weak_kac(f.h);
    o.expect(d.grouplike.implements_s2_residual < 1e-8, f.name + " g x g^-1 - S^2(x) " + num(d.grouplike.implements_s2_residual));
    o.expect(d.grouplike.trace_balance_residual < 1e-8, f.name + " trace balance " + num(d.grouplike.trace_balance_residual));
    if (weak_kac) o.expect(max_abs(d.grouplike.g - f.h.algebra().unit()) < 1e-9, f.name + " g != 1 on a weak Kac fixture");
    o.expect(d.modular.modular_residual < 1e-8, f.name + " modular identity " + num(d.modular.modular_residual));
    o.expect(d.modular.tracial == weak_kac, f.name + " traciality does not match weak Kac");
    kac += weak_kac;
    ++n;
  }
  o.summary = std::to_string(n) + " C* fixtures (" + std::to_string(n - kac) + " not weak Kac)";
  return o;
}

Outcome duality() {
  Outcome o;
  double worst = 0.0;
  for (const Named& f : shipped_fixtures()) {
    const WeakHopfAlgebra d = dual_wha(f.h);
    const WeakHopfAlgebra bi = dual_wha(d);
    double diff = std::max(max_abs(bi.wba.comultiplication() - f.h.wba.comultiplication()),
                           max_abs(bi.wba.counit() - f.h.wba.counit()));
    for (int i = 0; i < f.h.dim(); ++i) diff = std::max(diff, max_abs(bi.algebra().left(i) - f.h.algebra().left(i)));
    worst = std::max(worst, diff);
    o.expect(diff < 1e-10, f.name + " bidual differs by " + num(diff));

    const Vec one_hat = d.algebra().unit();
    Mat images_l(f.h.dim(), f.h.sub.left.rank()), images_r(f.h.dim(), f.h.sub.right.rank());
    for (int k = 0; k < f.h.sub.left.rank(); ++k)
      images_l.col(k) = hit_functional_left(f.h.wba, f.h.sub.left.basis.col(k), one_hat);
    for (int k = 0; k < f.h.sub.right.rank(); ++k)
      images_r.col(k) = hit_functional_right(f.h.wba, one_hat, f.h.sub.right.basis.col(k));
    const Tolerance tol;
    o.expect(numerical_rank(images_l, tol) == f.h.sub.left.rank() && d.sub.right.rank() == f.h.sub.left.rank() &&
                 subspace_distance(column_space(images_l, tol), d.sub.right) < 1e-8,
             f.name + " l -> l->1^ is not a bijection onto the dual right subalgebra");
    o.expect(numerical_rank(images_r, tol) == f.h.sub.right.rank() && d.sub.left.rank() == f.h.sub.right.rank() &&
                 subspace_distance(column_space(images_r, tol), d.sub.left) < 1e-8,
             f.name + " r -> 1^<-r is not a bijection onto the dual left subalgebra");
  }
  o.summary = "worst bidual difference " + num(worst);
  return o;
}

Outcome indices() {
  Outcome o;
  int n = 0;
  for (const Named& f : c_star_fixtures(true)) {
    const bool weak_kac = is_weak_kac(f.h);
    if (!f.h.sub.indecomposable) continue;
    const MarkovIndex m = markov_index(f.h);
    o.expect(std::abs(m.delta - m.delta_dual) < 1e-6, f.name + " PF(d_A) " + num(m.delta) + " vs PF(d_A^) " + num(m.delta_dual));
    for (double x : m.inclusion)
      o.expect(std::abs(x - m.delta) < 1e-6, f.name + " inclusion index " + num(x) + " vs " + num(m.delta));
    for (const char* prefix : {"Z", "pair"}) {
      const std::string p = prefix;
      if (f.name.rfind(p, 0) == 0 && f.name.size() == p.size() + 1) {
        const double expected = f.name.back() - '0';
        o.expect(std::abs(m.delta - expected) < 1e-9, f.name + " delta " + num(m.delta));
      }
    }
    const HaarData d = haar_data(f.h);
    o.expect(d.index.value.has_value(), f.name + " has no scalar Haar index");
    if (d.index.value) {
      const double i = *d.index.value;
      o.expect(i >= m.delta - 1e-9, f.name + " I " + num(i) + " < delta " + num(m.delta));
      o.expect((std::abs(i - m.delta) < 1e-9) == weak_kac, f.name + " I = delta does not match weak Kac");
    }
    ++n;
  }
  o.summary = std::to_string(n) + " indecomposable C* fixtures";
  return o;
}

Outcome representations() {
  Outcome o;
  int n = 0;
  for (const Named& f : c_star_fixtures(true)) {
    const RepContext ctx = rep_context(f.h);
    const SectorTable t = sector_dimensions(ctx);
    auto mult = [&](const Representation& d) { return block_multiplicities(ctx.blocks, d); };
    auto dim_of = [&](const Representation& d) { return dimension_matrix(t, mult(d)); };
    const std::size_t k = ctx.irreps.size();
    std::vector<std::vector<Representation>> product(k, std::vector<Representation>(k));
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = 0; q < k; ++q) product[p][q] = monoidal_product(f.h, ctx.irreps[p], ctx.irreps[q]).rep;
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = 0; q < k; ++q) {
        for (std::size_t r = 0; r < k; ++r) {
          const auto left = mult(monoidal_product(f.h, product[p][q], ctx.irreps[r]).rep);
          const auto right = mult(monoidal_product(f.h, ctx.irreps[p], product[q][r]).rep);
          o.expect(left == right, f.name + " fusion is not associative");
        }
        const RealMat dp = dim_of(ctx.irreps[p]), dq = dim_of(ctx.irreps[q]);
        o.expect((dim_of(direct_sum(ctx.irreps[p], ctx.irreps[q])) - dp - dq).cwiseAbs().maxCoeff() < 1e-9,
                 f.name + " d is not additive");
        o.expect((dim_of(product[p][q]) - dp * dq).cwiseAbs().maxCoeff() < 1e-9, f.name + " d is not multiplicative");
      }
    for (std::size_t q = 0; q < k; ++q) {
      const Representation c = conjugate_rep(f.h, ctx.irreps[q], ctx.g);
      o.expect((dim_of(c) - dim_of(ctx.irreps[q]).transpose()).cwiseAbs().maxCoeff() < 1e-9,
               f.name + " conjugation does not transpose d");
    }
    for (const Sector& s : t.sectors) {
      o.expect(std::abs(s.d - s.d_standard) < 1e-6, f.name + " d_q " + num(s.d) + " vs " + num(s.d_standard));
      o.expect(s.d >= 1.0 - 1e-9, f.name + " d_q " + num(s.d) + " < 1");
    }
    ++n;
  }
  o.summary = std::to_string(n) + " C* fixtures";
  return o;
}

Outcome actions() {
  Outcome o;
  std::vector<WhaAction> acts = {translation_action(2), translation_action(3)};
  for (const char* kind : {"cyclic", "s3", "pair-groupoid"})
    for (int n : {2, 3}) {
      if (std::string(kind) == "s3" && n == 3) continue;
      acts.push_back(dual_regular_action(make_fixture(kind, n)));
      acts.back().name += " of " + std::string(kind) + (std::string(kind) == "s3" ? "" : " " + std::to_string(n));
    }
  int regular = 0;
  for (const WhaAction& act : acts) {
    const CrossedProduct cp = crossed_product(act);
    const int dim_m = act.target.dim(), dim_a = act.acting.dim(), dim_l = act.acting.sub.left.rank();
    o.expect(cp.algebra.dim() * dim_l == dim_m * dim_a,
             act.name + ": crossed product has dim " + std::to_string(cp.algebra.dim()));
    const BasicConstructionReport b = verify_basic_construction(act, cp);
    std::string failing;
    for (std::size_t i = 3; i < b.items.size(); ++i)
      if (!b.items[i].passed) failing += (failing.empty() ? "" : ", ") + b.items[i].name;
    o.expect(failing.empty(), act.name + ": " + failing);
    const RegularityReport r = is_regular(act, cp);
    regular += r.regular();
    if (!r.regular()) o.expect(false, act.name + " is not regular: " + r.failing_clauses());
    const GaloisMap g = galois_map(act);
    o.expect(g.bijective, act.name + ": Galois map has rank " + std::to_string(g.rank));
  }
  const WhaAction trivial = trivial_action(make_fixture("cyclic", 2), scalar_algebra());
  const GaloisMap g = galois_map(trivial);
  o.expect(g.rank < std::max(g.source_dim, g.target_dim), "trivial action: Galois map is not rank-deficient");
  const RegularityReport r = is_regular(trivial);
  o.expect(!r.regular() && !r.failing_clauses().empty(), "trivial action: no failing clause reported");
  o.summary = std::to_string(regular) + " of " + std::to_string(acts.size()) + " actions regular";
  return o;
}

Outcome smash() {
  Outcome o;
  for (int n = 2; n <= 5; ++n) {
    const BlockDecomposition b = block_decomposition(smash_product(make_fixture("cyclic", n)).product.algebra);
    o.expect(b.count() == 1 && b.blocks[0].size == n, "Z" + std::to_string(n) + " smash product is not M_n");
  }
  int n = 0;
  std::vector<Named> fixtures;
  for (Named& f : shipped_fixtures())
    if (f.h.dim() <= 10) fixtures.push_back(std::move(f));
  if (m2_m3_present()) fixtures.push_back({"M2+M3", load_wha(kM2M3Path)});
  for (const Named& f : fixtures) {
    const SmashProduct s = smash_product(f.h);
    const int blocks = block_decomposition(s.product.algebra).count();
    const int left_blocks = block_decomposition(subalgebra(f.h.algebra(), f.h.sub.left)).count();
    o.expect(blocks == left_blocks,
             f.name + ": " + std::to_string(blocks) + " blocks vs " + std::to_string(left_blocks) + " in A^L");
    ++n;
  }
  o.summary = "Z2..Z5 give M_n; block counts match on " + std::to_string(n) + " fixtures";
  return o;
}

Outcome paper_example() {
  Outcome o;
  if (!m2_m3_present()) {
    o.skipped = true;
    o.summary = "no M2+M3 fixture";
    return o;
  }
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const AnalysisReport r = analyze(read_wha_file(kM2M3Path));
  o.expect(r.exit_code() == 0, "analysis exit code " + std::to_string(r.exit_code()));
  int two = -1, three = -1;
  for (std::size_t q = 0; q < r.sectors.size(); ++q) {
    if (r.sectors[q].size == 2) two = static_cast<int>(q);
    if (r.sectors[q].size == 3) three = static_cast<int>(q);
  }
  o.expect(r.sectors.size() == 2 && two >= 0 && three >= 0, "sectors are not the blocks M2 and M3");
  if (two >= 0 && three >= 0) {
    o.expect(std::abs(r.sectors[two].d - 1.0) < 1e-6, "d_2 = " + num(r.sectors[two].d));
    o.expect(std::abs(r.sectors[three].d - phi) < 1e-6, "d_3 = " + num(r.sectors[three].d));
    std::vector<int> expected(r.sectors.size(), 0);
    expected[two] = expected[three] = 1;
    o.expect(r.fusion.size() == r.sectors.size() && r.fusion[three][three] == expected, "3 x 3 != 2 + 3");
  }
  o.expect(r.delta && std::abs(*r.delta - (2.0 + 3.0 * phi)) < 1e-6, "delta");
  o.expect(r.haar && r.haar->index && std::abs(*r.haar->index - (5.0 + std::sqrt(5.0))) < 1e-6, "Haar index");
  if (r.delta && r.haar && r.haar->index)
    o.summary = "delta " + std::to_string(*r.delta) + ", I " + std::to_string(*r.haar->index);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_failures;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      expected_failures.insert(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--expect-fail N ...]\n";
      return 64;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"axiom gate", axiom_gate},
      {"antipode", antipode},
      {"Maschke", maschke},
      {"Haar integral", haar},
      {"canonical grouplike", grouplike},
      {"duality", duality},
      {"indices", indices},
      {"representation category", representations},
      {"actions", actions},
      {"smash product", smash},
      {"M2+M3 example", paper_example},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("error: ") + e.what());
    }
    const std::string status = o.skipped ? "SKIPPED" : o.failures.empty() ? "PASS" : "FAIL";
    if (status == "FAIL") failed.insert(id);
    std::cout << "criterion " << std::setw(2) << id << " " << std::left << std::setw(8) << status << std::right
              << criteria[i].first << ": " << o.summary << " (" << o.checks << " checks, " << std::fixed
              << std::setprecision(2) << seconds_since(t0) << " s)" << std::defaultfloat << "\n";
    for (std::size_t k = 0; k < o.failures.size() && k < 12; ++k) std::cout << "    " << o.failures[k] << "\n";
    if (o.failures.size() > 12) std::cout << "    ... " << o.failures.size() - 12 << " more\n";
    std::cout << std::flush;
  }
  if (failed == expected_failures) return 0;
  for (int id : failed)
    if (!expected_failures.count(id)) std::cout << "unexpected failure: criterion " << id << "\n";
  for (int id : expected_failures)
    if (!failed.count(id)) std::cout << "criterion " << id << " was expected to fail and did not\n";
  return 1;
}
