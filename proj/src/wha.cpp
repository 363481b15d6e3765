#include "whakit/wha.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace whakit {

namespace {

// Tracks max |x - y| together with max(|x|, |y|) over a family of comparisons.
struct Gap {
  double residual = 0.0;
  double scale = 0.0;
  template <typename A, typename B>
  void add(const A& x, const B& y) {
    residual = std::max(residual, max_abs(x - y));
    scale = std::max({scale, max_abs(x), max_abs(y)});
  }
  AxiomResidual named(const std::string& name, const Tolerance& tol) const {
    return AxiomResidual{name, residual, scale, tol.close(residual, scale)};
  }
};

Eigen::Index idx(int i, int j, int n) { return static_cast<Eigen::Index>(i) * n + j; }

}  // namespace

WeakBialgebra::WeakBialgebra(FinDimAlgebra algebra, Mat comultiplication, Vec counit)
    : algebra_(std::move(algebra)), delta_(std::move(comultiplication)), counit_(std::move(counit)) {
  const int n = algebra_.dim();
  if (delta_.rows() != idx(n, 0, n) || delta_.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "comultiplication must be n^2 x n");
  if (counit_.size() != n) throw Error(ErrorCode::DimensionMismatch, "counit must have length n");
  coproducts_.assign(n, Mat::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) coproducts_[k](i, j) = delta_(idx(i, j, n), k);
  form_.resize(n, n);
  for (int a = 0; a < n; ++a) form_.row(a) = counit_.transpose() * algebra_.left(a);
}

Mat WeakBialgebra::coproduct_of(const Vec& a) const {
  if (a.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "element has wrong length");
  Mat out = Mat::Zero(dim(), dim());
  for (int k = 0; k < dim(); ++k)
    if (a(k) != Scalar(0)) out += a(k) * coproducts_[k];
  return out;
}

Mat WeakBialgebra::tensor_multiply(const Mat& x, const Mat& y) const {
  const int n = dim();
  Mat out = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Vec row = x.row(i).transpose();
    if (max_abs(row) == 0.0) continue;
    out.noalias() += algebra_.left(i) * y * algebra_.left_matrix(row).transpose();
  }
  return out;
}

const AxiomResidual* ValidationReport::find(const std::string& name) const {
  for (const AxiomResidual& a : axioms)
    if (a.name == name) return &a;
  return nullptr;
}

ValidationReport validate_wba(const WeakBialgebra& w, const Tolerance& tol) {
  const int n = w.dim();
  const FinDimAlgebra& alg = w.algebra();
  const Mat& delta = w.comultiplication();
  ValidationReport rep;

  const AlgebraValidation av = validate_algebra(alg, tol);
  double cscale = 1.0;
  for (int i = 0; i < n; ++i) cscale = std::max(cscale, max_abs(alg.left(i)));
  rep.axioms.push_back({"associativity", av.associativity, cscale * cscale, tol.close(av.associativity, cscale * cscale)});
  rep.axioms.push_back({"unit", av.unit, cscale, tol.close(av.unit, cscale)});

  Gap coassoc;
  for (int k = 0; k < n; ++k) {
    const Mat m1 = delta * w.coproduct(k);               // (p*n+q, j): (Delta (x) id) Delta
    const Mat m2 = w.coproduct(k) * delta.transpose();   // (i, p*n+q): (id (x) Delta) Delta
    Mat a(idx(n, 0, n), n), b(idx(n, 0, n), n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int r = 0; r < n; ++r) {
          a(idx(p, q, n), r) = m1(idx(p, q, n), r);
          b(idx(p, q, n), r) = m2(p, idx(q, r, n));
        }
    coassoc.add(a, b);
  }
  rep.axioms.push_back(coassoc.named("coassociativity", tol));

  Gap counit;
  for (int k = 0; k < n; ++k) {
    const Vec ek = alg.basis_vector(k);
    counit.add(Vec(w.coproduct(k).transpose() * w.counit()), ek);
    counit.add(Vec(w.coproduct(k) * w.counit()), ek);
  }
  rep.axioms.push_back(counit.named("counit", tol));

  Gap mult;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      mult.add(w.coproduct_of(alg.left(a).col(b)), w.tensor_multiply(w.coproduct(a), w.coproduct(b)));
  rep.axioms.push_back(mult.named("comultiplicativity", tol));

  // Weak unit: compare three n x n x n tensors, slice q in the middle leg.
  const Mat d1 = w.coproduct_of_unit();
  const Mat d2 = delta * d1;  // (p*n+q, l): Delta^2(1)[p,q,l]
  Gap unit;
  for (int q = 0; q < n; ++q) {
    Mat c(n, n), ct(n, n);  // c(j,k) = coefficient of e_q in e_j e_k
    for (int j = 0; j < n; ++j) c.row(j) = alg.left(j).row(q);
    ct = c.transpose();
    const Mat lhs = d1 * c * d1;
    const Mat rhs = d1 * ct * d1;
    Mat mid(n, n);
    for (int p = 0; p < n; ++p) mid.row(p) = d2.row(idx(p, q, n));
    unit.add(lhs, mid);
    unit.add(rhs, mid);
  }
  rep.axioms.push_back(unit.named("weak-unit", tol));

  const Mat& f = w.counit_form();
  Gap weak_counit;
  for (int b = 0; b < n; ++b) {
    const Mat mid = alg.right(b).transpose() * f;
    weak_counit.add(Mat(f * w.coproduct(b) * f), mid);
    weak_counit.add(Mat(f * w.coproduct(b).transpose() * f), mid);
  }
  rep.axioms.push_back(weak_counit.named("weak-counit", tol));

  rep.ok = std::all_of(rep.axioms.begin(), rep.axioms.end(), [](const AxiomResidual& a) { return a.passed; });
  return rep;
}

CounitalMaps counital_maps(const WeakBialgebra& w) {
  const Mat d1 = w.coproduct_of_unit();
  return CounitalMaps{d1.transpose() * w.counit_form(), d1 * w.counit_form().transpose()};
}

CounitalSubalgebras counital_subalgebras(const WeakBialgebra& w, const Tolerance& tol) {
  const int n = w.dim();
  const FinDimAlgebra& alg = w.algebra();
  const CounitalMaps pi = counital_maps(w);
  const Mat d1 = w.coproduct_of_unit();
  const Eigen::Index n2 = idx(n, 0, n);
  Mat left_def(2 * n2, n), right_def(2 * n2, n);
  for (int k = 0; k < n; ++k) {
    const Mat& dk = w.coproduct(k);
    const Mat l1 = dk - alg.left(k) * d1;
    const Mat l2 = dk - alg.right(k) * d1;
    const Mat r1 = dk - d1 * alg.left(k).transpose();
    const Mat r2 = dk - d1 * alg.right(k).transpose();
    left_def.col(k) << Eigen::Map<const Vec>(l1.data(), n2), Eigen::Map<const Vec>(l2.data(), n2);
    right_def.col(k) << Eigen::Map<const Vec>(r1.data(), n2), Eigen::Map<const Vec>(r2.data(), n2);
  }
  CounitalSubalgebras s;
  s.left = column_space(pi.left, tol);
  s.right = column_space(pi.right, tol);
  s.left_definition_distance = subspace_distance(s.left, kernel(left_def, tol));
  s.right_definition_distance = subspace_distance(s.right, kernel(right_def, tol));
  const SubspaceBasis z = center(alg, tol);
  s.left_center = intersect(s.left, z, tol);
  s.right_center = intersect(s.right, z, tol);
  s.hypercenter = intersect(s.left_center, s.right_center, tol);
  s.pure = s.left_center.rank() == 1;
  s.indecomposable = s.hypercenter.rank() == 1;
  return s;
}

namespace {

// Rows: three axioms per basis element, each an n-vector; columns: vec(S) by column blocks.
void assemble_antipode_system(const WeakBialgebra& w, const CounitalMaps& pi, Mat& sys, Vec& rhs) {
  const int n = w.dim();
  const FinDimAlgebra& alg = w.algebra();
  const Eigen::Index n2 = idx(n, 0, n);
  sys = Mat::Zero(3 * n2, n2);
  rhs = Vec::Zero(3 * n2);
  std::vector<Mat> lpr(n);
  for (int i = 0; i < n; ++i) lpr[i] = alg.left_matrix(pi.right.col(i));
  for (int a = 0; a < n; ++a) {
    const Mat& da = w.coproduct(a);
    const Eigen::Index r1 = idx(a, 0, n), r2 = n2 + idx(a, 0, n), r3 = 2 * n2 + idx(a, 0, n);
    for (int j = 0; j < n; ++j) {
      const Vec col = da.col(j);
      if (max_abs(col) > 0.0) sys.block(r1, idx(j, 0, n), n, n) = alg.left_matrix(col);
      const Vec row = da.row(j).transpose();
      if (max_abs(row) > 0.0) sys.block(r2, idx(j, 0, n), n, n) = alg.right_matrix(row);
      Mat third = Mat::Zero(n, n);
      for (int i = 0; i < n; ++i)
        if (da(i, j) != Scalar(0)) third += da(i, j) * lpr[i];
      if (j == a) third -= Mat::Identity(n, n);
      sys.block(r3, idx(j, 0, n), n, n) = third;
    }
    rhs.segment(r1, n) = pi.left.col(a);
    rhs.segment(r2, n) = pi.right.col(a);
  }
}

// S(a_(1)) a_(2) S(a_(3)) - S(a), evaluated literally.
double third_axiom_residual(const WeakBialgebra& w, const Mat& s) {
  const int n = w.dim();
  const FinDimAlgebra& alg = w.algebra();
  std::vector<Vec> y(n);  // y_i = S(e_i(1)) e_i(2)
  for (int i = 0; i < n; ++i) {
    y[i] = Vec::Zero(n);
    const Mat& di = w.coproduct(i);
    for (int p = 0; p < n; ++p) {
      const Vec row = di.row(p).transpose();
      if (max_abs(row) > 0.0) y[i] += alg.multiply(s.col(p), row);
    }
  }
  double res = 0.0;
  for (int a = 0; a < n; ++a) {
    Vec acc = Vec::Zero(n);
    const Mat& da = w.coproduct(a);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (da(i, j) != Scalar(0)) acc += da(i, j) * alg.multiply(y[i], s.col(j));
    res = std::max(res, max_abs(acc - s.col(a)));
  }
  return res;
}

}  // namespace

AntipodeSolution solve_antipode(const WeakBialgebra& w, const Tolerance& tol) {
  const int n = w.dim();
  const CounitalMaps pi = counital_maps(w);
  Mat sys;
  Vec rhs;
  assemble_antipode_system(w, pi, sys, rhs);
  const LeastSquares ls = solve_least_squares(sys, rhs);
  AntipodeSolution out;
  out.antipode = Eigen::Map<const Mat>(ls.solution.data(), n, n);
  out.residual = ls.residual;
  const double scale = std::max(1.0, max_abs(out.antipode)) * std::max(1.0, max_abs(sys));
  if (!tol.close(out.residual, scale)) {
    std::ostringstream os;
    os << "antipode system residual " << out.residual;
    throw Error(ErrorCode::NoAntipode, os.str());
  }
  const RealVec sv = svd(sys).s;
  out.uniqueness_margin = sv(sv.size() - 1);
  if (out.uniqueness_margin <= rank_threshold(sv, tol)) {
    std::ostringstream os;
    os << "homogeneous antipode system has a kernel (smallest singular value " << out.uniqueness_margin << ")";
    throw Error(ErrorCode::NonUnique, os.str());
  }
  out.third_axiom_residual = third_axiom_residual(w, out.antipode);
  if (!tol.close(out.third_axiom_residual, scale)) throw Error(ErrorCode::NoAntipode, "third antipode axiom fails");
  return out;
}

AntipodeCheck check_antipode(const WeakBialgebra& w, const Mat& s, const Tolerance& tol) {
  const int n = w.dim();
  const FinDimAlgebra& alg = w.algebra();
  if (s.rows() != n || s.cols() != n) throw Error(ErrorCode::DimensionMismatch, "antipode must be n x n");
  const CounitalMaps pi = counital_maps(w);
  AntipodeCheck c;
  for (int a = 0; a < n; ++a) {
    const Mat& da = w.coproduct(a);
    Vec l = Vec::Zero(n), r = Vec::Zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (da(i, j) != Scalar(0)) {
          l += da(i, j) * alg.multiply(alg.basis_vector(i), s.col(j));
          r += da(i, j) * alg.multiply(s.col(i), alg.basis_vector(j));
        }
    c.left_axiom = std::max(c.left_axiom, max_abs(l - pi.left.col(a)));
    c.right_axiom = std::max(c.right_axiom, max_abs(r - pi.right.col(a)));
  }
  c.third_axiom = third_axiom_residual(w, s);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      c.antimultiplicative =
          std::max(c.antimultiplicative, max_abs(s * alg.left(a).col(b) - alg.multiply(s.col(b), s.col(a))));
  c.unit = max_abs(s * alg.unit() - alg.unit());
  c.invertible = numerical_rank(s, tol) == n;
  const CounitalSubalgebras sub = counital_subalgebras(w, tol);
  c.counital_exchange = subspace_distance(column_space(s * sub.left.basis, tol), sub.right);
  const double scale = std::max(1.0, max_abs(s));
  c.ok = tol.close(c.left_axiom, scale) && tol.close(c.right_axiom, scale) &&
         tol.close(c.third_axiom, scale * scale) && tol.close(c.antimultiplicative, scale * scale) &&
         tol.close(c.unit, scale) && c.invertible && c.counital_exchange < 1e-6;
  return c;
}

WeakHopfAlgebra make_wha(const WeakBialgebra& w, const Tolerance& tol, const std::optional<Mat>& antipode) {
  const ValidationReport rep = validate_wba(w, tol);
  if (!rep.ok) {
    std::ostringstream os;
    os << "weak bialgebra axioms fail:";
    for (const AxiomResidual& a : rep.axioms)
      if (!a.passed) os << " " << a.name << " (" << a.residual << ")";
    throw Error(ErrorCode::ValidationError, os.str());
  }
  WeakHopfAlgebra h;
  h.wba = w;
  if (antipode) {
    const AntipodeCheck c = check_antipode(w, *antipode, tol);
    if (!c.ok) throw Error(ErrorCode::NoAntipode, "supplied antipode fails its axioms");
    h.antipode = *antipode;
  } else {
    h.antipode = solve_antipode(w, tol).antipode;
  }
  h.pi = counital_maps(w);
  h.sub = counital_subalgebras(w, tol);
  return h;
}

WeakBialgebra dual_wba(const WeakBialgebra& w) {
  const int n = w.dim();
  const FinDimAlgebra& alg = w.algebra();
  std::vector<Mat> left(n, Mat::Zero(n, n));
  Mat delta(idx(n, 0, n), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        left[i](k, j) = w.comultiplication()(idx(i, j, n), k);
        delta(idx(i, j, n), k) = alg.left(i)(k, j);
      }
  std::vector<std::string> labels;
  for (const std::string& l : alg.labels()) labels.push_back(l.rfind('^', 0) == 0 ? l.substr(1) : "^" + l);
  return WeakBialgebra(FinDimAlgebra(labels, left, w.counit()), delta, alg.unit());
}

WeakHopfAlgebra dual_wha(const WeakHopfAlgebra& h, const Tolerance& tol) {
  WeakBialgebra d = dual_wba(h.wba);
  if (h.algebra().has_involution()) {
    const Mat j = (h.algebra().involution().conjugate() * h.antipode).transpose();
    d = WeakBialgebra(d.algebra().with_involution(j), d.comultiplication(), d.counit());
  }
  WeakHopfAlgebra out;
  out.wba = std::move(d);
  out.antipode = h.antipode.transpose();
  out.pi = counital_maps(out.wba);
  out.sub = counital_subalgebras(out.wba, tol);
  return out;
}

Vec hit_functional_left(const WeakBialgebra& w, const Vec& a, const Vec& phi) {
  return w.algebra().right_matrix(a).transpose() * phi;
}

Vec hit_functional_right(const WeakBialgebra& w, const Vec& phi, const Vec& a) {
  return w.algebra().left_matrix(a).transpose() * phi;
}

Vec hit_element_left(const WeakBialgebra& w, const Vec& phi, const Vec& x) {
  return w.coproduct_of(x) * phi;
}

Vec hit_element_right(const WeakBialgebra& w, const Vec& x, const Vec& phi) {
  return w.coproduct_of(x).transpose() * phi;
}

SweedlerArrows sweedler_arrows(const WeakBialgebra& w) {
  const int n = w.dim();
  const FinDimAlgebra& alg = w.algebra();
  SweedlerArrows s;
  for (int k = 0; k < n; ++k) {
    s.on_dual_left.push_back(alg.right(k).transpose());
    s.on_dual_right.push_back(alg.left(k).transpose());
    Mat l(n, n), r(n, n);  // column j: image of e_j
    for (int j = 0; j < n; ++j) {
      l.col(j) = w.coproduct(j).col(k);
      r.col(j) = w.coproduct(j).row(k).transpose();
    }
    s.on_algebra_left.push_back(l);
    s.on_algebra_right.push_back(r);
  }
  // Module axioms: e_a e_b acts as the composite in the appropriate order.
  const WeakBialgebra d = dual_wba(w);
  auto combine = [n](const std::vector<Mat>& m, const Vec& c) {
    Mat out = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k)
      if (c(k) != Scalar(0)) out += c(k) * m[k];
    return out;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Vec ab = alg.left(a).col(b);
      const Vec hab = d.algebra().left(a).col(b);
      s.module_residual = std::max(
          {s.module_residual, max_abs(combine(s.on_dual_left, ab) - s.on_dual_left[a] * s.on_dual_left[b]),
           max_abs(combine(s.on_dual_right, ab) - s.on_dual_right[b] * s.on_dual_right[a]),
           max_abs(combine(s.on_algebra_left, hab) - s.on_algebra_left[a] * s.on_algebra_left[b]),
           max_abs(combine(s.on_algebra_right, hab) - s.on_algebra_right[b] * s.on_algebra_right[a])});
    }
  return s;
}

StarReport validate_star(const WeakHopfAlgebra& h, const Tolerance& tol) {
  const FinDimAlgebra& alg = h.algebra();
  const Mat& j = alg.involution();
  const int n = h.dim();
  StarReport r;
  for (int a = 0; a < n; ++a) {
    const Mat lhs = h.wba.coproduct_of(j.col(a));
    const Mat rhs = j * h.wba.coproduct(a).conjugate() * j.transpose();
    r.comultiplication = std::max(r.comultiplication, max_abs(lhs - rhs));
    r.counit = std::max(r.counit, std::abs(h.wba.counit_of(j.col(a)) - std::conj(h.wba.counit()(a))));
  }
  r.antipode = max_abs(j * h.antipode.conjugate() * j.conjugate() * h.antipode - Mat::Identity(n, n));
  const AlgebraValidation av = validate_algebra(alg, tol);
  r.algebra = std::max({*av.star_antimultiplicative, *av.star_involutive, *av.star_unit});
  const double scale = std::max({1.0, max_abs(j), max_abs(h.antipode)});
  Vec tr(n);
  for (int k = 0; k < n; ++k) tr(k) = alg.left(k).trace();
  const Mat g = functional_gram(alg, tr);
  if (max_abs(g - g.adjoint()) <= tol.bound(max_abs(g))) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly);
    const RealVec& ev = es.eigenvalues();
    r.positivity_margin = ev(0) / std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  } else {
    r.positivity_margin = -1.0;
  }
  r.c_star = r.positivity_margin > 1e-12;
  r.ok = r.c_star && tol.close(r.comultiplication, scale * scale) && tol.close(r.counit, scale) &&
         tol.close(r.antipode, scale * scale * scale * scale) && tol.close(r.algebra, scale * scale);
  return r;
}

double weak_kac_defect(const WeakHopfAlgebra& h) {
  return max_abs(h.antipode * h.antipode - Mat::Identity(h.dim(), h.dim()));
}

bool is_weak_kac(const WeakHopfAlgebra& h, const Tolerance& tol) {
  return tol.close(weak_kac_defect(h), std::max(1.0, max_abs(h.antipode)));
}

SeparabilityStructure separability_structure(const WeakHopfAlgebra& h, const Tolerance& tol) {
  const FinDimAlgebra& alg = h.algebra();
  const int n = h.dim();
  const Mat d1 = h.wba.coproduct_of_unit();
  const Svd dec = svd(d1);
  const RealVec& sv = dec.s;
  const double thr = rank_threshold(sv, tol);
  SeparabilityStructure s;
  s.first_leg_in_right = s.second_leg_in_left = s.first_leg_in_left = s.second_leg_in_right = true;
  const Tolerance loose = Tolerance::uniform(1e-7);
  for (Eigen::Index i = 0; i < sv.size() && sv(i) > thr; ++i) {
    Vec first = sv(i) * dec.u.col(i);
    Vec second = dec.v.col(i).conjugate();
    s.first_leg_in_right = s.first_leg_in_right && h.sub.right.contains(first, loose);
    s.first_leg_in_left = s.first_leg_in_left && h.sub.left.contains(first, loose);
    s.second_leg_in_left = s.second_leg_in_left && h.sub.left.contains(second, loose);
    s.second_leg_in_right = s.second_leg_in_right && h.sub.right.contains(second, loose);
    s.pairs.emplace_back(std::move(first), std::move(second));
  }
  if (!(s.first_leg_in_right && s.second_leg_in_left))
    throw Error(ErrorCode::NotSeparable, "Delta(1) does not lie in A^R (x) A^L");
  // e = S(1_(1)) (x) 1_(2) in A^L (x) A^L.
  s.idempotent = h.antipode * d1;
  Vec m = Vec::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (s.idempotent(i, j) != Scalar(0)) m += s.idempotent(i, j) * alg.left(i).col(j);
  s.multiplication_residual = max_abs(m - alg.unit());
  const Vec& eps = h.wba.counit();
  for (int k = 0; k < h.sub.left.rank(); ++k) {
    const Vec l = h.sub.left.basis.col(k);
    const Mat left_act = alg.left_matrix(l) * s.idempotent;               // (l (x) 1) e
    const Mat right_act = s.idempotent * alg.right_matrix(l).transpose();  // e (1 (x) l)
    s.bimodule_residual = std::max(s.bimodule_residual, max_abs(left_act - right_act));
    Vec split = Vec::Zero(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (left_act(i, j) != Scalar(0)) split += left_act(i, j) * alg.left(i).col(j);
    s.split_residual = std::max(s.split_residual, max_abs(split - l));
    s.counit_residual = std::max(s.counit_residual, max_abs(Vec(left_act.transpose() * eps) - l));
  }
  return s;
}

std::vector<Vec> hypercentral_projections(const WeakHopfAlgebra& h, const Tolerance& tol) {
  if (h.sub.hypercenter.rank() == 1) return {h.algebra().unit()};
  return minimal_idempotents(h.algebra(), h.sub.hypercenter, tol);
}

WhaComponent restrict_to_component(const WeakHopfAlgebra& h, const Vec& c, const Tolerance& tol) {
  const FinDimAlgebra& alg = h.algebra();
  const SubspaceBasis b = column_space(alg.left_matrix(c), tol);
  const FinDimAlgebra sub = subalgebra(alg, b, tol);
  const int k = b.rank();
  const Mat& e = b.basis;
  Mat delta(idx(k, 0, k), k);
  for (int col = 0; col < k; ++col) {
    const Mat y = e.adjoint() * h.wba.coproduct_of(e.col(col)) * e.conjugate();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) delta(idx(i, j, k), col) = y(i, j);
  }
  const Vec eps = e.transpose() * h.wba.counit();
  WeakBialgebra w(sub, delta, eps);
  WhaComponent out{make_wha(w, tol, Mat(e.adjoint() * h.antipode * e)), e};
  return out;
}

}  // namespace whakit
