#include <doctest.h>

#include <cmath>

#include "whakit/linalg.hpp"

using namespace whakit;

TEST_CASE("kernel and column space are complementary") {
  Rng rng;
  Mat m = Mat::Zero(6, 5);
  for (int i = 0; i < 3; ++i) m += rng.complex_vector(6) * rng.complex_vector(5).adjoint();
  const Tolerance tol;
  SubspaceBasis k = kernel(m, tol);
  SubspaceBasis r = column_space(m, tol);
  CHECK(k.rank() == 2);
  CHECK(r.rank() == 3);
  CHECK(max_abs(m * k.basis) < 1e-10);
  CHECK(max_abs(k.basis.adjoint() * k.basis - Mat::Identity(2, 2)) < 1e-12);
}

TEST_CASE("intersection of coordinate planes") {
  const Tolerance tol;
  Mat a = Mat::Zero(3, 2), b = Mat::Zero(3, 2);
  a(0, 0) = a(1, 1) = 1.0;
  b(1, 0) = b(2, 1) = 1.0;
  SubspaceBasis s = intersect(SubspaceBasis(a), SubspaceBasis(b), tol);
  REQUIRE(s.rank() == 1);
  CHECK(std::abs(std::abs(s.basis(1, 0)) - 1.0) < 1e-12);
  CHECK(subspace_distance(SubspaceBasis(a), SubspaceBasis(a)) < 1e-12);
  CHECK(subspace_distance(SubspaceBasis(a), s) == 1.0);
}

TEST_CASE("least squares recovers an exact solution") {
  Rng rng;
  Mat m(5, 3);
  for (int j = 0; j < 3; ++j) m.col(j) = rng.complex_vector(5);
  Vec x = rng.complex_vector(3);
  LeastSquares ls = solve_least_squares(m, m * x);
  CHECK(max_abs(ls.solution - x) < 1e-10);
  CHECK(ls.residual < 1e-12);
}

TEST_CASE("perron_frobenius examples") {
  RealMat one(1, 1);
  one << 2;
  CHECK(perron_frobenius(one).eigenvalue == doctest::Approx(2.0));

  RealMat fib(2, 2);
  fib << 0, 1, 1, 1;
  const PerronFrobenius pf = perron_frobenius(fib);
  CHECK(pf.eigenvalue == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-12));
  CHECK(pf.eigenvector.minCoeff() > 0);
  CHECK(pf.eigenvector.sum() == doctest::Approx(1.0));
  CHECK((fib * pf.eigenvector - pf.eigenvalue * pf.eigenvector).norm() < 1e-12);

  RealMat ones = RealMat::Ones(2, 2);
  CHECK(perron_frobenius(ones).eigenvalue == doctest::Approx(2.0));

  RealMat neg(1, 1);
  neg << -1;
  CHECK_THROWS_AS(perron_frobenius(neg), Error);
}

TEST_CASE("irreducibility and components") {
  RealMat m = RealMat::Zero(4, 4);
  m(0, 1) = m(1, 0) = 1;
  m(2, 3) = m(3, 2) = 1;
  CHECK_FALSE(is_irreducible(m));
  CHECK(connected_components(m).size() == 2);
  m(1, 2) = m(2, 1) = 1;
  CHECK(is_irreducible(m));
}

TEST_CASE("rng is reproducible") {
  Rng a, b;
  CHECK(max_abs(a.complex_vector(4) - b.complex_vector(4)) == 0.0);
}
