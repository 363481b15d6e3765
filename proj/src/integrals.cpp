#include "whakit/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace whakit {

IntegralSpace integral_space(const WeakHopfAlgebra& h, Side side, const Tolerance& tol) {
  const FinDimAlgebra& alg = h.algebra();
  const int n = h.dim();
  Mat stacked(static_cast<Eigen::Index>(n) * n, n);
  for (int j = 0; j < n; ++j) {
    const Mat block = side == Side::Left ? Mat(alg.left(j) - alg.left_matrix(h.pi.left.col(j)))
                                         : Mat(alg.right(j) - alg.right_matrix(h.pi.right.col(j)));
    stacked.middleRows(static_cast<Eigen::Index>(j) * n, n) = block;
  }
  IntegralSpace out{side, kernel(stacked, tol), 0.0};
  out.residual = out.space.rank() == 0 ? 0.0 : max_abs(stacked * out.space.basis);
  return out;
}

namespace {

// Solves m c = rhs in coordinates of s; returns s c when the residual is small.
std::optional<Vec> affine_solve(const SubspaceBasis& s, const Mat& m, const Vec& rhs, const Tolerance& tol) {
  if (s.rank() == 0) return std::nullopt;
  const LeastSquares ls = solve_least_squares(m, rhs);
  if (!tol.close(ls.residual, std::max(1.0, max_abs(rhs)))) return std::nullopt;
  return Vec(s.basis * ls.solution);
}

}  // namespace

std::optional<Vec> normalized_left_integral(const WeakHopfAlgebra& h, const Tolerance& tol) {
  const IntegralSpace left = integral_space(h, Side::Left, tol);
  return affine_solve(left.space, h.pi.left * left.space.basis, h.algebra().unit(), tol);
}

MaschkeReport maschke_check(const WeakHopfAlgebra& h, const Tolerance& tol) {
  MaschkeReport r;
  r.semisimple = is_semisimple(h.algebra(), tol);
  r.normalized_integral_exists = normalized_left_integral(h, tol).has_value();
  r.separable = r.semisimple;
  if (r.semisimple != r.normalized_integral_exists)
    throw Error(ErrorCode::InconsistentMaschke, std::string("semisimple = ") + (r.semisimple ? "true" : "false") +
                                                    " but normalized left integral " +
                                                    (r.normalized_integral_exists ? "exists" : "does not exist"));
  return r;
}

std::optional<HaarIntegral> haar_integral(const WeakHopfAlgebra& h, const Tolerance& tol) {
  const FinDimAlgebra& alg = h.algebra();
  const int n = h.dim();
  const SubspaceBasis both = intersect(integral_space(h, Side::Left, tol).space,
                                       integral_space(h, Side::Right, tol).space, tol);
  if (both.rank() == 0) return std::nullopt;
  Mat m(2 * n, both.rank());
  m << h.pi.left * both.basis, h.pi.right * both.basis;
  Vec rhs(2 * n);
  rhs << alg.unit(), alg.unit();
  std::optional<Vec> sol = affine_solve(both, m, rhs, tol);
  if (!sol) return std::nullopt;
  HaarIntegral out;
  out.h = *sol;
  out.unique = numerical_rank(m, tol) == both.rank();
  out.idempotent_residual = max_abs(alg.multiply(out.h, out.h) - out.h);
  out.antipode_residual = max_abs(h.antipode * out.h - out.h);
  if (alg.has_involution()) out.star_residual = max_abs(alg.star(out.h) - out.h);
  if (!tol.close(out.idempotent_residual, std::max(1.0, max_abs(out.h))))
    throw Error(ErrorCode::NotIdempotent, "normalized two-sided integral is not idempotent");
  return out;
}

HaarCriterion haar_criterion(const WeakHopfAlgebra& h, const Tolerance& tol) {
  const FinDimAlgebra& alg = h.algebra();
  const int n = h.dim();
  HaarCriterion c;
  c.semisimple = is_semisimple(alg, tol);
  const Mat s2 = h.antipode * h.antipode;
  Mat stacked(static_cast<Eigen::Index>(n) * n, n);  // g e_x - S^2(e_x) g = 0
  for (int x = 0; x < n; ++x)
    stacked.middleRows(static_cast<Eigen::Index>(x) * n, n) = alg.right(x) - alg.left_matrix(s2.col(x));
  const SubspaceBasis k = kernel(stacked, tol);
  if (k.rank() > 0) {
    Rng rng;
    const Vec g = k.basis * rng.complex_vector(k.rank());
    if (std::optional<Vec> ginv = inverse(alg, g, tol)) {
      c.implementer_exists = true;
      c.implementer = g;
      if (c.semisimple) {
        bool all = true;
        for (const Block& q : block_decomposition(alg, tol).blocks)
          all = all && std::abs(block_trace(alg, q, *ginv)) > tol.bound(max_abs(*ginv));
        c.traces_nonzero = all;
      }
    }
  }
  c.criterion = c.semisimple && c.implementer_exists && c.traces_nonzero.value_or(false);
  c.haar_exists = haar_integral(h, tol).has_value();
  if (c.criterion != c.haar_exists)
    throw Error(ErrorCode::InconsistentCriterion, std::string("criterion ") + (c.criterion ? "holds" : "fails") +
                                                      " but Haar integral " + (c.haar_exists ? "exists" : "is absent"));
  return c;
}

ConditionalExpectations haar_conditional_expectations(const WeakHopfAlgebra& h, const Vec& dual_haar,
                                                      const Tolerance& tol) {
  const FinDimAlgebra& alg = h.algebra();
  const int n = h.dim();
  ConditionalExpectations e;
  e.left.resize(n, n);
  e.right.resize(n, n);
  for (int a = 0; a < n; ++a) {
    e.left.col(a) = hit_element_left(h.wba, dual_haar, alg.basis_vector(a));
    e.right.col(a) = hit_element_right(h.wba, alg.basis_vector(a), dual_haar);
  }
  e.idempotent_residual = std::max(max_abs(e.left * e.left - e.left), max_abs(e.right * e.right - e.right));
  e.range_residual = std::max(subspace_distance(column_space(e.left, tol), h.sub.left),
                              subspace_distance(column_space(e.right, tol), h.sub.right));
  auto bimodule = [&](const Mat& ex, const SubspaceBasis& sub) {
    double r = 0.0;
    for (int k = 0; k < sub.rank(); ++k) {
      const Mat l = alg.left_matrix(sub.basis.col(k));
      const Mat rr = alg.right_matrix(sub.basis.col(k));
      r = std::max({r, max_abs(ex * l - l * ex), max_abs(ex * rr - rr * ex)});
    }
    return r;
  };
  e.bimodule_residual = std::max(bimodule(e.left, h.sub.left), bimodule(e.right, h.sub.right));
  e.unit_residual = std::max(max_abs(e.left * alg.unit() - alg.unit()), max_abs(e.right * alg.unit() - alg.unit()));
  return e;
}

CanonicalGrouplike canonical_grouplike(const WeakHopfAlgebra& h, const Vec& haar, const Vec& dual_haar,
                                       const Tolerance& tol) {
  const FinDimAlgebra& alg = h.algebra();
  const int n = h.dim();
  const Vec left = hit_element_left(h.wba, dual_haar, haar);
  const Vec right = hit_element_right(h.wba, haar, dual_haar);
  const Tolerance loose = Tolerance::uniform(1e-8);
  if (!is_positive(alg, left, loose) || !is_positive(alg, right, loose))
    throw Error(ErrorCode::NotPositive, "h^ -> h or h <- h^ is not positive");
  auto root = [](double v) { return std::sqrt(std::max(v, 0.0)); };
  CanonicalGrouplike g;
  g.g_left = hermitian_function_of_element(alg, dual_haar, left, root, loose);
  g.g_right = hermitian_function_of_element(alg, dual_haar, right, root, loose);
  const std::optional<Vec> gr_inv = inverse(alg, g.g_right, tol);
  if (!gr_inv || !inverse(alg, g.g_left, tol)) throw Error(ErrorCode::NotPositive, "g_L or g_R is not invertible");
  g.g = alg.multiply(g.g_left, *gr_inv);
  const std::optional<Vec> ginv = inverse(alg, g.g, tol);
  if (!ginv) throw Error(ErrorCode::NotPositive, "g is not invertible");
  g.positive = is_positive(alg, g.g, loose);
  const Mat s2 = h.antipode * h.antipode;
  for (int x = 0; x < n; ++x) {
    const Vec conj = alg.multiply(alg.multiply(g.g, alg.basis_vector(x)), *ginv);
    g.implements_s2_residual = std::max(g.implements_s2_residual, max_abs(conj - s2.col(x)));
  }
  for (const Block& q : block_decomposition(alg, tol).blocks) {
    const Scalar t = block_trace(alg, q, g.g), ti = block_trace(alg, q, *ginv);
    g.block_traces.push_back(t.real());
    g.block_inverse_traces.push_back(ti.real());
    g.trace_balance_residual = std::max(g.trace_balance_residual, std::abs(t - ti));
  }
  return g;
}

ModularReport haar_modular_check(const WeakHopfAlgebra& h, const Vec& dual_haar, const Vec& g_left,
                                 const Vec& g_right, const Tolerance& tol) {
  const FinDimAlgebra& alg = h.algebra();
  const int n = h.dim();
  const Vec k = alg.multiply(g_left, g_right);
  const std::optional<Vec> kinv = inverse(alg, k, tol);
  if (!kinv) throw Error(ErrorCode::NotPositive, "g_L g_R is not invertible");
  ModularReport r;
  double scale = 0.0;
  for (int a = 0; a < n; ++a) {
    const Vec twisted = alg.multiply(alg.multiply(k, alg.basis_vector(a)), *kinv);
    for (int b = 0; b < n; ++b) {
      const Scalar ab = dual_haar.transpose() * alg.left(a).col(b);
      const Scalar ba = dual_haar.transpose() * alg.left(b).col(a);
      const Scalar mod = dual_haar.transpose() * alg.multiply(alg.basis_vector(b), twisted);
      r.modular_residual = std::max(r.modular_residual, std::abs(ab - mod));
      r.trace_residual = std::max(r.trace_residual, std::abs(ab - ba));
      scale = std::max(scale, std::abs(ab));
    }
  }
  r.tracial = tol.close(r.trace_residual, scale);
  r.weak_kac = is_weak_kac(h, tol);
  r.consistent = r.tracial == r.weak_kac;
  return r;
}

HaarIndex haar_index(const WeakHopfAlgebra& h, const ConditionalExpectations& e, const Tolerance& tol) {
  const FinDimAlgebra& alg = h.algebra();
  const WatataniIndex wl = watatani_index(alg, e.left, tol);
  const WatataniIndex wr = watatani_index(alg, e.right, tol);
  HaarIndex out;
  out.left_element = wl.element;
  out.right_element = wr.element;
  out.left_right_gap = max_abs(wl.element - wr.element);
  const double scale = std::max(1.0, max_abs(wl.element));
  if (wl.scalar && wr.scalar && tol.close(std::abs(*wl.scalar - *wr.scalar), scale * 1e3))
    out.value = wl.scalar->real();
  for (const Vec& c : hypercentral_projections(h, tol)) {
    const Vec ic = alg.multiply(wl.element, c);
    out.component_values.push_back((c.dot(ic) / c.squaredNorm()).real());
  }
  if (!out.value && h.sub.indecomposable) {
    std::ostringstream os;
    os << "Watatani index of E^L is not a scalar (gap to E^R " << out.left_right_gap << ")";
    throw Error(ErrorCode::NonScalarIndex, os.str());
  }
  return out;
}

Mat haar_inner_product(const WeakHopfAlgebra& h, const Vec& haar, const Tolerance& tol) {
  const WeakHopfAlgebra d = dual_wha(h, tol);
  const Mat g = functional_gram(d.algebra(), haar);
  const double scale = std::max(1e-300, max_abs(g));
  if (max_abs(g - g.adjoint()) > tol.bound(scale))
    throw Error(ErrorCode::NotPositiveDefinite, "Haar Gram matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly);
  const RealVec& ev = es.eigenvalues();
  if (ev(0) <= 1e-12 * ev.cwiseAbs().maxCoeff()) {
    std::ostringstream os;
    os << "Haar Gram matrix has smallest eigenvalue " << ev(0);
    throw Error(ErrorCode::NotPositiveDefinite, os.str());
  }
  return g;
}

HaarData haar_data(const WeakHopfAlgebra& h, const Tolerance& tol) {
  if (!h.algebra().has_involution()) throw Error(ErrorCode::NoInvolution, "Haar data needs a C*-structure");
  const std::optional<HaarIntegral> hi = haar_integral(h, tol);
  if (!hi) throw Error(ErrorCode::NoHaar, "no normalized two-sided integral in A");
  const WeakHopfAlgebra d = dual_wha(h, tol);
  const std::optional<HaarIntegral> hh = haar_integral(d, tol);
  if (!hh) throw Error(ErrorCode::NoHaar, "no normalized two-sided integral in the dual");
  HaarData out;
  out.h = hi->h;
  out.h_hat = hh->h;
  out.expectations = haar_conditional_expectations(h, out.h_hat, tol);
  out.grouplike = canonical_grouplike(h, out.h, out.h_hat, tol);
  out.modular = haar_modular_check(h, out.h_hat, out.grouplike.g_left, out.grouplike.g_right, tol);
  out.index = haar_index(h, out.expectations, tol);
  return out;
}

}  // namespace whakit
