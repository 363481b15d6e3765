#include <doctest.h>

#include "helpers.hpp"
#include "whakit/actions.hpp"
#include "whakit/fixtures.hpp"
#include "whakit/integrals.hpp"
#include "whakit/io.hpp"

using namespace whakit;

namespace {

WeakHopfAlgebra m2_m3() { return load_wha(std::string(WHAKIT_FIXTURE_DIR) + "/m2_m3.wha.json"); }

// A acts on C through the character that is 1 on the Z_2 arrows of pair(2) + Z_2 and 0 on
// the pair groupoid. Every l in A^L acts on 1 by 0 or 1.
WhaAction character_action() {
  const GroupoidSpec g = disjoint_union(pair_groupoid(2), cyclic_group(2));
  const WeakHopfAlgebra u = groupoid_wha(g);
  Vec chi = Vec::Zero(u.dim());
  for (int i = 0; i < u.dim(); ++i)
    if (g.morphisms[i].source >= 2) chi(i) = 1.0;
  return scalar_action(u, chi, "character");
}

std::vector<WhaAction> valid_actions() {
  std::vector<WhaAction> out;
  out.push_back(translation_action(2));
  out.push_back(translation_action(3));
  const WeakHopfAlgebra z2 = make_fixture("cyclic", 2);
  out.push_back(scalar_action(z2, z2.wba.counit(), "trivial"));
  out.push_back(character_action());
  for (const char* kind : {"cyclic", "s3", "pair-groupoid", "function-pair-groupoid", "function-cyclic"}) {
    const WeakHopfAlgebra h = make_fixture(kind, 3);
    out.push_back(dual_regular_action(h));
    out.push_back(dual_arrow_action(h));
  }
  return out;
}

bool passed(const ValidationReport& r, const std::string& name) { return r.find(name)->passed; }

}  // namespace

TEST_CASE("action axioms hold for the shipped actions") {
  for (const WhaAction& act : valid_actions()) {
    CAPTURE(act.name);
    CHECK(validate_action(act).ok);
  }
}

TEST_CASE("algebra-map residuals of valid actions are tiny") {
  for (const WhaAction& act : valid_actions()) {
    CAPTURE(act.name);
    const AxiomResidual* r = validate_action(act).find("algebra-map");
    CHECK(r->residual < 1e-12);
  }
}

TEST_CASE("translation action on functions of Z_2") {
  const WhaAction act = translation_action(2);
  CHECK(act.alpha[1](0, 1) == Scalar(1.0));
  CHECK(act.alpha[1](1, 0) == Scalar(1.0));
  CHECK(validate_action(act).ok);
}

TEST_CASE("perturbed arrow action fails multiplicativity") {
  WhaAction act = dual_regular_action(make_fixture("cyclic", 3));
  act.alpha[1](0, 1) += 1e-3;
  const ValidationReport r = validate_action(act);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(passed(r, "multiplicativity"));
}

TEST_CASE("character action of the groupoid union is degenerate but valid") {
  const WhaAction act = character_action();
  CHECK(validate_action(act).ok);
  const RightSubalgebra mr = m_r_subalgebra(act);
  CHECK(mr.space.rank() == 1);
  CHECK_FALSE(mr.injective);
  CHECK(act.acting.sub.left.rank() == 3);
}

TEST_CASE("scalar action of a weak Hopf algebra through eps is not an action") {
  const WeakHopfAlgebra pair = make_fixture("pair-groupoid", 2);
  const ValidationReport r = validate_action(scalar_action(pair, pair.wba.counit()));
  CHECK_FALSE(passed(r, "algebra-map"));
}

TEST_CASE("invariants of the translation action are the constants") {
  const InvariantSubalgebra inv = invariants(translation_action(4));
  REQUIRE(inv.space.rank() == 1);
  CHECK(inv.space.distance(Vec::Ones(4)) < 1e-12);
  CHECK(inv.distance < 1e-12);
}

TEST_CASE("trivial action leaves everything invariant") {
  const WeakHopfAlgebra z3 = make_fixture("cyclic", 3);
  const WhaAction act = trivial_action(z3, function_algebra(4));
  CHECK(validate_action(act).ok);
  CHECK(invariants(act).space.rank() == 4);
}

TEST_CASE("invariants of the dual regular action have the dimension of A^L") {
  for (const char* kind : {"pair-groupoid", "function-pair-groupoid", "s3"}) {
    const WeakHopfAlgebra h = make_fixture(kind, 2);
    CAPTURE(kind);
    CHECK(invariants(dual_regular_action(h)).space.rank() == h.sub.left.rank());
  }
}

TEST_CASE("M^A is a unital *-subalgebra") {
  for (const WhaAction& act : valid_actions()) {
    CAPTURE(act.name);
    const InvariantSubalgebra inv = invariants(act);
    const FinDimAlgebra& m = act.target;
    CHECK(is_closed_under_product(m, inv.space));
    CHECK(inv.space.contains(m.unit(), Tolerance{}));
    for (int c = 0; c < inv.space.rank(); ++c) CHECK(inv.space.distance(m.star(inv.space.basis.col(c))) < 1e-10);
  }
}

TEST_CASE("invariant mismatch is reported") {
  // chi = psi o pi^L with psi(1) = 0: chi transforms like 1 but alpha_h = chi(h) = 0.
  const GroupoidSpec g = pair_groupoid(2);
  const WeakHopfAlgebra pair = groupoid_wha(g);
  Vec chi(pair.dim());
  for (int i = 0; i < pair.dim(); ++i) chi(i) = g.morphisms[i].target == 0 ? 1.0 : -1.0;
  CHECK_THROWS_WITH_AS(invariants(scalar_action(pair, chi)), doctest::Contains("InvariantMismatch"), Error);
}

TEST_CASE("M^R for Hopf and groupoid actions") {
  const RightSubalgebra hopf = m_r_subalgebra(translation_action(3));
  CHECK(hopf.space.rank() == 1);
  CHECK(hopf.space.distance(Vec::Ones(3)) < 1e-12);
  const RightSubalgebra pair = m_r_subalgebra(dual_regular_action(make_fixture("pair-groupoid", 2)));
  CHECK(pair.space.rank() == 2);
  CHECK(pair.injective);
}

TEST_CASE("crossed product dimensions") {
  CHECK(crossed_product(translation_action(3)).algebra.dim() == 9);
  const CrossedProduct pair = crossed_product(dual_regular_action(make_fixture("pair-groupoid", 2)));
  CHECK(pair.algebra.dim() == 8);
  CHECK(pair.relation_rank == 8);
}

TEST_CASE("crossed product dimension is dim M dim A / dim A^L") {
  for (const WhaAction& act : valid_actions()) {
    CAPTURE(act.name);
    const CrossedProduct cp = crossed_product(act);
    const int m = act.target.dim();
    const int n = act.acting.dim();
    CHECK(cp.algebra.dim() == m * n - cp.relation_rank);
    CHECK(cp.algebra.dim() * act.acting.sub.left.rank() == m * n);
    CHECK(cp.validation.ok);
    CHECK(cp.embedding_residual < 1e-10);
  }
}

TEST_CASE("crossed product of the translation action of Z_2 is M_2") {
  const CrossedProduct cp = crossed_product(translation_action(2));
  const BlockDecomposition b = block_decomposition(cp.algebra);
  REQUIRE(b.count() == 1);
  CHECK(b.blocks[0].size == 2);
}

TEST_CASE("ill-defined products are rejected") {
  // Replacing A^L by a subspace that is not a left ideal in the relations breaks descent.
  WhaAction act = dual_regular_action(make_fixture("pair-groupoid", 2));
  Mat bad = Mat::Zero(4, 1);
  bad(1, 0) = 1.0;  // an off-diagonal matrix unit
  act.acting.sub.left = SubspaceBasis(bad);
  CHECK_THROWS_WITH_AS(crossed_product(act), doctest::Contains("IllDefinedProduct"), Error);
}

TEST_CASE("regular actions") {
  const WhaAction fun_pair = dual_regular_action(make_fixture("function-pair-groupoid", 2));
  const RegularityReport r = is_regular(fun_pair);
  CHECK(r.regular());
  CHECK(r.relative_commutant_dim == 2);
  CHECK(r.quasi_basis_residual < 1e-10);
  CHECK(is_regular(dual_arrow_action(make_fixture("pair-groupoid", 3))).regular());
}

TEST_CASE("trivial action of Z_2 on C fails only the relative commutant clause") {
  const WeakHopfAlgebra z2 = make_fixture("cyclic", 2);
  const RegularityReport r = is_regular(scalar_action(z2, z2.wba.counit()));
  CHECK(r.right_subalgebra);
  CHECK_FALSE(r.relative_commutant);
  CHECK(r.finite_index);
  CHECK(r.relative_commutant_dim == 2);
  CHECK(r.failing_clauses() == "(ii) M' meet M x| A = A^R");
}

TEST_CASE("actions on commutative algebras of dimension > 1 are not regular") {
  // M is commutative, so M itself sits in M' meet M x| A while A^R = C1.
  const RegularityReport r = is_regular(translation_action(3));
  CHECK(r.right_subalgebra);
  CHECK(r.finite_index);
  CHECK_FALSE(r.relative_commutant);
  CHECK(r.relative_commutant_dim == 3);
  CHECK_FALSE(is_regular(dual_regular_action(make_fixture("pair-groupoid", 2))).regular());
}

TEST_CASE("basic construction for a regular action") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    const WhaAction act = dual_regular_action(make_fixture("function-pair-groupoid", n));
    const BasicConstructionReport r = verify_basic_construction(act, crossed_product(act));
    for (const ItemCheck& c : r.items) {
      CAPTURE(c.name);
      CHECK(c.passed);
    }
    CHECK(r.ok);
    CHECK(r.find("N'M2 = A")->lhs_dim == n * n);
  }
}

TEST_CASE("basic construction items for the translation action") {
  const WhaAction act = translation_action(3);
  const BasicConstructionReport r = verify_basic_construction(act, crossed_product(act));
  CHECK(r.find("jones-projection")->passed);
  CHECK(r.find("conditional-expectation")->passed);
  CHECK(r.find("generates")->passed);
  // N = C, so N' meet M_2 is all of M_2 = M_3 rather than A.
  CHECK(r.find("N'M2 = A")->lhs_dim == 9);
  CHECK(r.find("N'M2 = A")->rhs_dim == 3);
  CHECK_FALSE(r.ok);
}

TEST_CASE("e = 1 x| h commutes with the invariants") {
  for (const WhaAction& act : valid_actions()) {
    CAPTURE(act.name);
    const CrossedProduct cp = crossed_product(act);
    const InvariantSubalgebra inv = invariants(act);
    auto haar = haar_integral(act.acting);
    REQUIRE(haar);
    const Vec e = cp.embed_a * haar->h;
    for (int c = 0; c < inv.space.rank(); ++c) {
      const Vec x = cp.embed_m * inv.space.basis.col(c);
      CHECK(max_abs(cp.algebra.multiply(e, x) - cp.algebra.multiply(x, e)) < 1e-10);
    }
    CHECK(max_abs(cp.algebra.multiply(e, e) - e) < 1e-10);
    CHECK(max_abs(cp.algebra.star(e) - e) < 1e-10);
  }
}

TEST_CASE("Galois map") {
  const GaloisMap t = galois_map(translation_action(3));
  CHECK(t.bijective);
  CHECK(t.source_dim == 9);
  CHECK(t.target_dim == 9);

  const GaloisMap p = galois_map(dual_regular_action(make_fixture("function-pair-groupoid", 2)));
  CHECK(p.bijective);
  CHECK(p.source_dim == 8);
  CHECK(p.module_residual < 1e-12);

  const WeakHopfAlgebra z2 = make_fixture("cyclic", 2);
  const GaloisMap triv = galois_map(scalar_action(z2, z2.wba.counit()));
  CHECK_FALSE(triv.bijective);
  CHECK(triv.source_dim == 1);
  CHECK(triv.target_dim == 2);
  CHECK(triv.rank == 1);
}

TEST_CASE("regular actions have bijective Galois maps") {
  for (const WhaAction& act : valid_actions()) {
    CAPTURE(act.name);
    if (is_regular(act).regular()) CHECK(galois_map(act).bijective);
  }
}

TEST_CASE("smash product of C[Z_n] is a full matrix algebra") {
  for (int n : {2, 3, 4}) {
    CAPTURE(n);
    const SmashProduct s = smash_product(make_fixture("cyclic", n));
    CHECK(s.product.algebra.dim() == n * n);
    const BlockDecomposition b = block_decomposition(s.product.algebra);
    REQUIRE(b.count() == 1);
    CHECK(b.blocks[0].size == n);
  }
}

TEST_CASE("smash product of the pair groupoid is the basic construction of C^2 in M_2") {
  const SmashProduct s = smash_product(make_fixture("pair-groupoid", 2));
  CHECK(s.product.algebra.dim() == 8);
  CHECK(s.semisimple);
  CHECK(s.basic_construction);
  const BlockDecomposition b = block_decomposition(s.product.algebra);
  REQUIRE(b.count() == 2);
  CHECK(b.blocks[0].size == 2);
  CHECK(b.blocks[1].size == 2);
}

TEST_CASE("smash products reproduce the basic construction of A^L in A") {
  std::vector<WeakHopfAlgebra> hs;
  for (const char* kind : {"s3", "pair-groupoid", "groupoid-union", "function-pair-groupoid", "function-cyclic"})
    hs.push_back(make_fixture(kind, 3));
  hs.push_back(m2_m3());
  for (const WeakHopfAlgebra& h : hs) {
    CAPTURE(h.dim());
    const SmashProduct s = smash_product(h);
    CHECK(s.semisimple);
    CHECK(s.basic_construction);
    CHECK(block_decomposition(s.product.algebra).count() == s.left_in_a.sub_blocks.count());
  }
}

TEST_CASE("inclusion matrices up to permutation") {
  Eigen::MatrixXi a(2, 3), b(2, 3), c(2, 3);
  a << 1, 0, 2, 0, 1, 1;
  b << 1, 1, 0, 2, 0, 1;
  c << 1, 0, 2, 0, 1, 2;
  CHECK(equal_up_to_permutation(a, b));
  CHECK_FALSE(equal_up_to_permutation(a, c));
  CHECK_FALSE(equal_up_to_permutation(a, a.transpose()));
}
