#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "whakit/fixtures.hpp"
#include "whakit/integrals.hpp"

using namespace whakit;
using testing_support::approx;

namespace {

std::vector<std::pair<std::string, WeakHopfAlgebra>> c_star_fixtures() {
  std::vector<std::pair<std::string, WeakHopfAlgebra>> out;
  for (int n = 2; n <= 5; ++n) out.emplace_back("Z" + std::to_string(n), make_fixture("cyclic", n));
  out.emplace_back("S3", make_fixture("s3"));
  out.emplace_back("pair2", make_fixture("pair-groupoid", 2));
  out.emplace_back("pair3", make_fixture("pair-groupoid", 3));
  out.emplace_back("union", make_fixture("groupoid-union", 2));
  out.emplace_back("fun-Z3", make_fixture("function-cyclic", 3));
  out.emplace_back("fun-pair2", make_fixture("function-pair-groupoid", 2));
  return out;
}

}  // namespace

TEST_CASE("integral spaces") {
  WeakHopfAlgebra z2 = make_fixture("cyclic", 2);
  IntegralSpace i = integral_space(z2, Side::Left);
  REQUIRE(i.space.rank() == 1);
  CHECK(std::abs(i.space.basis(0, 0) - i.space.basis(1, 0)) < 1e-12);  // proportional to 1 + g

  WeakHopfAlgebra h4 = make_fixture("sweedler-h4");
  IntegralSpace li = integral_space(h4, Side::Left);
  REQUIRE(li.space.rank() == 1);
  const Vec v = li.space.basis.col(0);
  CHECK(std::abs(v(0)) < 1e-12);  // no component on 1 or g: lies in the radical span{x, gx}
  CHECK(std::abs(v(1)) < 1e-12);
  for (int x = 0; x < 4; ++x)  // x i = eps(x) i
    CHECK(approx(h4.algebra().multiply(h4.algebra().basis_vector(x), v), h4.wba.counit()(x) * v) < 1e-12);

  CHECK(integral_space(make_fixture("pair-groupoid", 2), Side::Left).space.rank() == 2);
}

TEST_CASE("normalized left integrals") {
  WeakHopfAlgebra z2 = make_fixture("cyclic", 2);
  std::optional<Vec> i = normalized_left_integral(z2);
  REQUIRE(i);
  CHECK(approx(*i, Vec::Constant(2, 0.5)) < 1e-12);
  CHECK_FALSE(normalized_left_integral(make_fixture("sweedler-h4")));
  CHECK(normalized_left_integral(make_fixture("pair-groupoid", 2)));
}

TEST_CASE("Maschke") {
  MaschkeReport z3 = maschke_check(make_fixture("cyclic", 3));
  CHECK(z3.semisimple);
  CHECK(z3.normalized_integral_exists);
  CHECK(z3.separable);
  MaschkeReport h4 = maschke_check(make_fixture("sweedler-h4"));
  CHECK_FALSE(h4.semisimple);
  CHECK_FALSE(h4.normalized_integral_exists);
  CHECK_FALSE(h4.separable);
  for (const auto& [name, h] : c_star_fixtures()) {
    CAPTURE(name);
    CHECK(maschke_check(h).semisimple);
  }
}

TEST_CASE("Haar integrals") {
  for (int n = 2; n <= 5; ++n) {
    WeakHopfAlgebra z = make_fixture("cyclic", n);
    std::optional<HaarIntegral> h = haar_integral(z);
    REQUIRE(h);
    CHECK(h->unique);
    CHECK(approx(h->h, Vec::Constant(n, 1.0 / n)) < 1e-12);
    std::optional<HaarIntegral> hh = haar_integral(dual_wha(z));
    REQUIRE(hh);
    CHECK(approx(hh->h, Vec::Unit(n, 0)) < 1e-12);  // evaluation at the identity
  }
  CHECK_FALSE(haar_integral(make_fixture("sweedler-h4")));
  for (const auto& [name, w] : c_star_fixtures()) {
    CAPTURE(name);
    std::optional<HaarIntegral> h = haar_integral(w);
    REQUIRE(h);
    CHECK(h->unique);
    CHECK(h->idempotent_residual < 1e-9);
    CHECK(h->antipode_residual < 1e-9);
    REQUIRE(h->star_residual);
    CHECK(*h->star_residual < 1e-9);
  }
}

TEST_CASE("Haar existence criterion agrees with direct computation") {
  HaarCriterion z3 = haar_criterion(make_fixture("cyclic", 3));
  CHECK(z3.criterion);
  CHECK(z3.haar_exists);
  REQUIRE(z3.traces_nonzero);
  CHECK(*z3.traces_nonzero);

  HaarCriterion h4 = haar_criterion(make_fixture("sweedler-h4"));
  CHECK_FALSE(h4.semisimple);
  CHECK_FALSE(h4.criterion);
  CHECK_FALSE(h4.haar_exists);
  for (const auto& [name, w] : c_star_fixtures()) {
    CAPTURE(name);
    CHECK(haar_criterion(w).criterion);
  }
}

TEST_CASE("Haar conditional expectations") {
  WeakHopfAlgebra z3 = make_fixture("cyclic", 3);
  const Vec hh = haar_integral(dual_wha(z3))->h;
  ConditionalExpectations e = haar_conditional_expectations(z3, hh);
  // Hopf case: E^L(x) = <h^, x> 1, the Haar state (not the counit).
  for (int a = 0; a < 3; ++a) CHECK(approx(e.left.col(a), hh(a) * z3.algebra().unit()) < 1e-12);

  WeakHopfAlgebra p2 = make_fixture("pair-groupoid", 2);
  ConditionalExpectations ep = haar_conditional_expectations(p2, haar_integral(dual_wha(p2))->h);
  Mat diag = Mat::Zero(4, 4);
  diag(0, 0) = diag(3, 3) = 1.0;
  CHECK(max_abs(ep.left - diag) < 1e-12);

  for (const auto& [name, w] : c_star_fixtures()) {
    CAPTURE(name);
    ConditionalExpectations x = haar_conditional_expectations(w, haar_integral(dual_wha(w))->h);
    CHECK(x.unit_residual < 1e-10);
    CHECK(x.idempotent_residual < 1e-10);
    CHECK(x.range_residual < 1e-8);
    CHECK(x.bimodule_residual < 1e-10);
  }
}

TEST_CASE("canonical grouplike and modular identity on weak Kac fixtures") {
  for (const auto& [name, w] : c_star_fixtures()) {
    CAPTURE(name);
    HaarData d = haar_data(w);
    CHECK(approx(d.grouplike.g, w.algebra().unit()) < 1e-9);
    CHECK(d.grouplike.positive);
    CHECK(d.grouplike.implements_s2_residual < 1e-8);
    CHECK(d.grouplike.trace_balance_residual < 1e-8);
    CHECK(d.modular.modular_residual < 1e-12);
    CHECK(d.modular.tracial);
    CHECK(d.modular.consistent);
    if (name[0] == 'Z') {
      // h^ -> h = <h^, h> 1 = 1/n with both integrals normalized.
      const double r = 1.0 / std::sqrt(double(w.dim()));
      CHECK(approx(d.grouplike.g_left, r * w.algebra().unit()) < 1e-12);
      CHECK(approx(d.grouplike.g_right, r * w.algebra().unit()) < 1e-12);
    }
  }
}

TEST_CASE("Haar index") {
  for (const char* kind : {"cyclic", "pair-groupoid"}) {
    CAPTURE(kind);
    HaarData d = haar_data(make_fixture(kind, 2));
    REQUIRE(d.index.value);
    CHECK(*d.index.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(d.index.left_right_gap < 1e-9);
  }
  HaarData s3 = haar_data(make_fixture("s3"));
  REQUIRE(s3.index.value);
  CHECK(*s3.index.value == doctest::Approx(6.0).epsilon(1e-12));

  // pair2 + Z2: the components have indices 2 and 2.
  HaarData u = haar_data(make_fixture("groupoid-union", 2));
  REQUIRE(u.index.component_values.size() == 2);
  for (double v : u.index.component_values) CHECK(v == doctest::Approx(2.0));
}

TEST_CASE("Haar inner product") {
  WeakHopfAlgebra z2 = make_fixture("cyclic", 2);
  Mat g = haar_inner_product(z2, haar_integral(z2)->h);
  CHECK(max_abs(g - 0.5 * Mat::Identity(2, 2)) < 1e-12);
  for (const auto& [name, w] : c_star_fixtures()) {
    CAPTURE(name);
    CHECK_NOTHROW((void)haar_inner_product(w, haar_integral(w)->h));
  }
  // g* = -g is an involution of C[Z_2] but not a C*-structure.
  Mat j = Mat::Zero(2, 2);
  j(0, 0) = 1.0;
  j(1, 1) = -1.0;
  WeakHopfAlgebra flipped = z2;
  flipped.wba = WeakBialgebra(z2.algebra().with_involution(j), z2.wba.comultiplication(), z2.wba.counit());
  try {
    (void)haar_inner_product(flipped, haar_integral(flipped)->h);
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveDefinite);
  }
}
