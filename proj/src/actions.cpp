#include "whakit/actions.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "whakit/fixtures.hpp"
#include "whakit/integrals.hpp"
#include "whakit/linalg.hpp"

namespace whakit {

namespace {

// Subspace equalities below are decided at this distance; exact statements give ~1e-14.
constexpr double kSubspaceTol = 1e-7;

Vec unit_vector(int n, int i) {
  Vec e = Vec::Zero(n);
  e(i) = 1.0;
  return e;
}

AxiomResidual axiom(std::string name, double residual, double scale, const Tolerance& tol) {
  return {std::move(name), residual, scale, tol.close(residual, scale)};
}

// Largest alpha_i, used as the scale of the action residuals.
double action_scale(const WhaAction& act) {
  double s = 1.0;
  for (const Mat& a : act.alpha) s = std::max(s, max_abs(a));
  return s;
}

void check_shapes(const WhaAction& act) {
  const int n = act.acting.dim();
  const int m = act.target.dim();
  if (static_cast<int>(act.alpha.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "action needs one matrix per basis vector of the acting algebra");
  for (const Mat& a : act.alpha)
    if (a.rows() != m || a.cols() != m)
      throw Error(ErrorCode::DimensionMismatch, "action matrices must be square of the target dimension");
}

SubspaceBasis image(const Mat& embedding, const SubspaceBasis& s, const Tolerance& tol) {
  if (s.rank() == 0) return SubspaceBasis(Mat::Zero(embedding.rows(), 0));
  return column_space(embedding * s.basis, tol);
}

Vec require_haar(const WeakHopfAlgebra& h, const Tolerance& tol) {
  auto haar = haar_integral(h, tol);
  if (!haar) throw Error(ErrorCode::NoHaar, "the acting algebra has no Haar integral");
  return haar->h;
}

// Orthonormal complement of the span of the columns of r inside C^n.
Mat complement(const Mat& r, int n, const Tolerance& tol) {
  if (r.cols() == 0) return Mat::Identity(n, n);
  return kernel(r.adjoint(), tol).basis;
}

// Vectors of M (x) A are stored row-major: entry j * dim A + i is the coefficient of m_j (x) e_i.
Mat as_matrix(const Vec& v, int m, int n) {
  Mat x(m, n);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) x(j, i) = v(j * n + i);
  return x;
}

Vec as_vector(const Mat& x) {
  Vec v(x.size());
  for (int j = 0; j < x.rows(); ++j)
    for (int i = 0; i < x.cols(); ++i) v(j * x.cols() + i) = x(j, i);
  return v;
}

struct Term {
  int p, q;
  Scalar c;
};

// Raw product and star on M (x) A before passing to the quotient.
class RawCrossedProduct {
 public:
  explicit RawCrossedProduct(const WhaAction& act) : act_(act), m_(act.target.dim()), n_(act.acting.dim()) {
    const WeakBialgebra& w = act.acting.wba;
    terms_.resize(n_);
    for (int i = 0; i < n_; ++i)
      for (int p = 0; p < n_; ++p)
        for (int q = 0; q < n_; ++q)
          if (std::abs(w.coproduct(i)(p, q)) > 1e-15) terms_[i].push_back({p, q, w.coproduct(i)(p, q)});
  }

  [[nodiscard]] int dim() const { return m_ * n_; }

  // (m x| a)(n x| b) = m alpha_{a_(1)}(n) x| a_(2) b
  [[nodiscard]] Vec product(const Vec& x, const Vec& y) const {
    const Mat xm = as_matrix(x, m_, n_);
    const Mat ym = as_matrix(y, m_, n_);
    const FinDimAlgebra& a = act_.acting.algebra();
    std::vector<Mat> moved(n_);
    for (int p = 0; p < n_; ++p) moved[p] = act_.alpha[p] * ym;
    Mat out = Mat::Zero(m_, n_);
    for (int i = 0; i < n_; ++i) {
      if (xm.col(i).isZero(0.0)) continue;
      Mat t = Mat::Zero(m_, n_);
      for (const Term& term : terms_[i]) t += term.c * moved[term.p] * a.left(term.q).transpose();
      out += act_.target.left_matrix(xm.col(i)) * t;
    }
    return as_vector(out);
  }

  // Column (j, i) holds (m_j x| e_i)^*; the star of a vector x is stars() * conj(x).
  [[nodiscard]] Mat stars() const {
    const FinDimAlgebra& a = act_.acting.algebra();
    const FinDimAlgebra& m = act_.target;
    Mat s = Mat::Zero(dim(), dim());
    for (int j = 0; j < m_; ++j) {
      const Vec mstar = m.star(unit_vector(m_, j));
      for (int i = 0; i < n_; ++i) {
        Mat out = Mat::Zero(m_, n_);
        for (const Term& t : terms_[i]) {
          const Vec left = act_(a.star(unit_vector(n_, t.p))) * mstar;
          const Vec right = a.star(unit_vector(n_, t.q));
          out += std::conj(t.c) * left * right.transpose();
        }
        s.col(j * n_ + i) = as_vector(out);
      }
    }
    return s;
  }

 private:
  const WhaAction& act_;
  int m_, n_;
  std::vector<std::vector<Term>> terms_;
};

ItemCheck compare(std::string name, const SubspaceBasis& lhs, const SubspaceBasis& rhs) {
  ItemCheck c;
  c.name = std::move(name);
  c.lhs_dim = lhs.rank();
  c.rhs_dim = rhs.rank();
  c.distance = c.lhs_dim == c.rhs_dim ? subspace_distance(lhs, rhs) : 1.0;
  c.passed = c.lhs_dim == c.rhs_dim && c.distance < kSubspaceTol;
  return c;
}

}  // namespace

Mat WhaAction::operator()(const Vec& a) const {
  const int m = target.dim();
  Mat out = Mat::Zero(m, m);
  for (int i = 0; i < static_cast<int>(alpha.size()); ++i)
    if (a(i) != Scalar(0)) out += a(i) * alpha[i];
  return out;
}

ValidationReport validate_action(const WhaAction& act, const Tolerance& tol) {
  check_shapes(act);
  const WeakHopfAlgebra& h = act.acting;
  const FinDimAlgebra& a = h.algebra();
  const FinDimAlgebra& m = act.target;
  const int n = h.dim();
  const int dm = m.dim();
  const double scale = action_scale(act);
  ValidationReport r;

  double algebra_map = max_abs(act(a.unit()) - Mat::Identity(dm, dm));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      algebra_map = std::max(algebra_map, max_abs(act.alpha[i] * act.alpha[j] - act(a.left(i).col(j))));
  r.axioms.push_back(axiom("algebra-map", algebra_map, scale * scale, tol));

  // alpha_a(m m') against sum alpha_{a_(1)}(m) alpha_{a_(2)}(m') over basis m, m'.
  std::vector<std::vector<Mat>> moved_left(n, std::vector<Mat>(dm));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < dm; ++j) moved_left[i][j] = m.left_matrix(act.alpha[i].col(j));
  double mult = 0.0;
  for (int k = 0; k < n; ++k) {
    const Mat& d = h.wba.coproduct(k);
    for (int j = 0; j < dm; ++j) {
      Mat rhs = Mat::Zero(dm, dm);  // column j': alpha_{a1}(m_j) alpha_{a2}(m_j')
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          if (d(p, q) != Scalar(0)) rhs += d(p, q) * moved_left[p][j] * act.alpha[q];
      const Mat lhs = act.alpha[k] * m.left(j);
      mult = std::max(mult, max_abs(lhs - rhs));
    }
  }
  r.axioms.push_back(axiom("multiplicativity", mult, scale * scale, tol));

  double star = 0.0;
  if (a.has_involution() && m.has_involution()) {
    for (int i = 0; i < n; ++i) {
      const Mat twisted = act(a.star(h.apply_antipode(unit_vector(n, i))));
      for (int j = 0; j < dm; ++j) {
        const Vec e = unit_vector(dm, j);
        star = std::max(star, max_abs(m.star(act.alpha[i] * e) - twisted * m.star(e)));
      }
    }
  }
  r.axioms.push_back(axiom("star", star, scale, tol));

  double unit = 0.0;
  for (int i = 0; i < n; ++i)
    unit = std::max(unit, max_abs(act.alpha[i] * m.unit() - act(h.pi.left.col(i)) * m.unit()));
  r.axioms.push_back(axiom("unit-invariance", unit, scale, tol));

  r.ok = std::all_of(r.axioms.begin(), r.axioms.end(), [](const AxiomResidual& x) { return x.passed; });
  return r;
}

FinDimAlgebra scalar_algebra() {
  return FinDimAlgebra({"1"}, {Mat::Identity(1, 1)}, Vec::Ones(1), Mat::Identity(1, 1));
}

FinDimAlgebra function_algebra(int n) {
  std::vector<std::string> labels;
  std::vector<Mat> left;
  for (int k = 0; k < n; ++k) {
    labels.push_back("d" + std::to_string(k));
    Mat l = Mat::Zero(n, n);
    l(k, k) = 1.0;
    left.push_back(l);
  }
  return FinDimAlgebra(labels, left, Vec::Ones(n), Mat::Identity(n, n));
}

WhaAction translation_action(int n, const Tolerance& tol) {
  WhaAction act;
  act.acting = groupoid_wha(cyclic_group(n), tol);
  act.target = function_algebra(n);
  act.name = "translation-Z" + std::to_string(n);
  for (int g = 0; g < n; ++g) {
    Mat a = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k) a(((k - g) % n + n) % n, k) = 1.0;
    act.alpha.push_back(a);
  }
  return act;
}

WhaAction dual_regular_action(const WeakHopfAlgebra& h, const Tolerance& tol) {
  WhaAction act;
  act.acting = h;
  act.target = dual_wha(h, tol).algebra();
  act.alpha = sweedler_arrows(h.wba).on_dual_left;
  act.name = "dual-regular";
  return act;
}

WhaAction dual_arrow_action(const WeakHopfAlgebra& h, const Tolerance& tol) {
  WhaAction act;
  act.acting = dual_wha(h, tol);
  act.target = h.algebra();
  act.alpha = sweedler_arrows(h.wba).on_algebra_left;
  act.name = "dual-arrow";
  return act;
}

WhaAction scalar_action(const WeakHopfAlgebra& h, const Vec& chi, std::string name) {
  if (chi.size() != h.dim()) throw Error(ErrorCode::DimensionMismatch, "character has the wrong length");
  WhaAction act;
  act.acting = h;
  act.target = scalar_algebra();
  for (int i = 0; i < h.dim(); ++i) act.alpha.push_back(Mat::Constant(1, 1, chi(i)));
  act.name = std::move(name);
  return act;
}

WhaAction trivial_action(const WeakHopfAlgebra& h, const FinDimAlgebra& m) {
  WhaAction act;
  act.acting = h;
  act.target = m;
  for (int i = 0; i < h.dim(); ++i) act.alpha.push_back(h.wba.counit()(i) * Mat::Identity(m.dim(), m.dim()));
  act.name = "trivial";
  return act;
}

InvariantSubalgebra invariants(const WhaAction& act, const Tolerance& tol) {
  check_shapes(act);
  const WeakHopfAlgebra& h = act.acting;
  const int n = h.dim();
  const int dm = act.target.dim();
  Mat stacked(n * dm, dm);
  for (int i = 0; i < n; ++i) stacked.middleRows(i * dm, dm) = act.alpha[i] - act(h.pi.left.col(i));
  InvariantSubalgebra out;
  out.space = kernel(stacked, tol);
  out.expectation = act(require_haar(h, tol));
  const SubspaceBasis range = column_space(out.expectation, tol);
  out.distance = range.rank() == out.space.rank() ? subspace_distance(range, out.space) : 1.0;
  if (out.distance > kSubspaceTol) {
    std::ostringstream msg;
    msg << "invariance equations give dimension " << out.space.rank() << ", the Haar image dimension "
        << range.rank() << " (distance " << out.distance << ")";
    throw Error(ErrorCode::InvariantMismatch, msg.str());
  }
  return out;
}

RightSubalgebra m_r_subalgebra(const WhaAction& act, const Tolerance& tol) {
  check_shapes(act);
  const SubspaceBasis& al = act.acting.sub.left;
  Mat images(act.target.dim(), al.rank());
  for (int c = 0; c < al.rank(); ++c) images.col(c) = act(al.basis.col(c)) * act.target.unit();
  RightSubalgebra r;
  r.space = column_space(images, tol);
  r.injective = r.space.rank() == al.rank();
  return r;
}

CrossedProduct crossed_product(const WhaAction& act, const Tolerance& tol) {
  check_shapes(act);
  const WeakHopfAlgebra& h = act.acting;
  const FinDimAlgebra& a = h.algebra();
  const FinDimAlgebra& m = act.target;
  const int n = h.dim();
  const int dm = m.dim();
  const RawCrossedProduct raw(act);
  const int big = raw.dim();

  // m . l (x) a - m (x) l a for l in A^L
  const SubspaceBasis& al = h.sub.left;
  Mat rel(big, al.rank() * dm * n);
  int col = 0;
  for (int c = 0; c < al.rank(); ++c) {
    const Mat right_l = m.right_matrix(act(al.basis.col(c)) * m.unit());
    const Mat left_l = a.left_matrix(al.basis.col(c));
    for (int j = 0; j < dm; ++j)
      for (int i = 0; i < n; ++i) {
        const Vec mj = unit_vector(dm, j);
        const Vec ei = unit_vector(n, i);
        rel.col(col++) = kron(right_l * mj, ei) - kron(mj, left_l * ei);
      }
  }
  const SubspaceBasis relations = rel.cols() ? column_space(rel, tol) : SubspaceBasis(Mat::Zero(big, 0));
  CrossedProduct cp;
  cp.relation_rank = relations.rank();
  cp.lift = complement(relations.basis, big, tol);
  const Mat& q = cp.lift;
  const int k = static_cast<int>(q.cols());

  // Descent: relations times anything stays in the relations. Every raw basis vector
  // is tried on small carriers, a few fixed random vectors otherwise.
  std::vector<Vec> probes;
  if (big <= 64) {
    for (int t = 0; t < big; ++t) probes.push_back(unit_vector(big, t));
  } else {
    Rng rng(20240611);
    for (int t = 0; t < 3; ++t) probes.push_back(rng.complex_vector(big));
  }
  const bool starred = a.has_involution() && m.has_involution();
  const Mat stars = starred ? raw.stars() : Mat();
  double descent = 0.0;
  double scale = 1.0;
  for (int r = 0; r < relations.rank(); ++r) {
    const Vec rv = relations.basis.col(r);
    for (const Vec& p : probes) {
      const Vec lr = raw.product(rv, p);
      const Vec rr = raw.product(p, rv);
      scale = std::max({scale, max_abs(lr), max_abs(rr)});
      descent = std::max({descent, max_abs(q.adjoint() * lr), max_abs(q.adjoint() * rr)});
    }
    if (starred) descent = std::max(descent, max_abs(q.adjoint() * stars * rv.conjugate()));
  }
  cp.descent_residual = descent;
  if (descent > kSubspaceTol * scale) {
    std::ostringstream msg;
    msg << "product does not descend to the relative tensor product (residual " << descent << ")";
    throw Error(ErrorCode::IllDefinedProduct, msg.str());
  }

  std::vector<Mat> left(k, Mat(k, k));
  for (int s = 0; s < k; ++s)
    for (int t = 0; t < k; ++t) left[s].col(t) = q.adjoint() * raw.product(q.col(s), q.col(t));
  const Vec unit = q.adjoint() * kron(m.unit(), a.unit());
  std::optional<Mat> involution;
  if (starred) involution = Mat(q.adjoint() * stars * q.conjugate());
  std::vector<std::string> labels;
  for (int s = 0; s < k; ++s) labels.push_back("x" + std::to_string(s));
  cp.algebra = FinDimAlgebra(labels, left, unit, involution);

  cp.embed_m = Mat(k, dm);
  for (int j = 0; j < dm; ++j) cp.embed_m.col(j) = q.adjoint() * kron(unit_vector(dm, j), a.unit());
  cp.embed_a = Mat(k, n);
  for (int i = 0; i < n; ++i) cp.embed_a.col(i) = q.adjoint() * kron(m.unit(), unit_vector(n, i));

  double emb = 0.0;
  for (int j = 0; j < dm; ++j)
    for (int l = 0; l < dm; ++l)
      emb = std::max(emb, max_abs(cp.algebra.multiply(cp.embed_m.col(j), cp.embed_m.col(l)) -
                                  cp.embed_m * m.left(j).col(l)));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      emb = std::max(emb, max_abs(cp.algebra.multiply(cp.embed_a.col(i), cp.embed_a.col(l)) -
                                  cp.embed_a * a.left(i).col(l)));
  cp.embedding_residual = emb;

  cp.validation = validate_algebra(cp.algebra, tol);
  if (!cp.validation.ok || !tol.close(emb, scale))
    throw Error(ErrorCode::ValidationError, "crossed product is not a unital *-algebra containing M and A");
  return cp;
}

std::string RegularityReport::failing_clauses() const {
  std::string out;
  auto add = [&out](const char* s) { out += out.empty() ? s : std::string(", ") + s; };
  if (!right_subalgebra) add("(i) M^R = A^L");
  if (!relative_commutant) add("(ii) M' meet M x| A = A^R");
  if (!finite_index) add("(iii) finite index");
  return out;
}

RegularityReport is_regular(const WhaAction& act, const CrossedProduct& cp, const Tolerance& tol) {
  const WeakHopfAlgebra& h = act.acting;
  RegularityReport r;

  const RightSubalgebra mr = m_r_subalgebra(act, tol);
  const ItemCheck i1 = compare("i", image(cp.embed_m, mr.space, tol), image(cp.embed_a, h.sub.left, tol));
  r.right_subalgebra_distance = i1.distance;
  r.right_subalgebra = i1.passed && mr.injective;

  const SubspaceBasis rel = commutant_in(column_space(cp.embed_m, tol), cp.algebra, tol);
  const ItemCheck i2 = compare("ii", rel, image(cp.embed_a, h.sub.right, tol));
  r.relative_commutant_dim = i2.lhs_dim;
  r.right_dim = i2.rhs_dim;
  r.relative_commutant_distance = i2.distance;
  r.relative_commutant = i2.passed;

  try {
    const WatataniIndex w = watatani_index(act.target, act(require_haar(h, tol)), tol);
    r.quasi_basis_residual = w.quasi_basis_residual;
    r.finite_index = w.quasi_basis_residual < kSubspaceTol;
  } catch (const Error&) {
    r.finite_index = false;
  }
  return r;
}

RegularityReport is_regular(const WhaAction& act, const Tolerance& tol) {
  return is_regular(act, crossed_product(act, tol), tol);
}

const ItemCheck* BasicConstructionReport::find(const std::string& name) const {
  for (const ItemCheck& c : items)
    if (c.name == name) return &c;
  return nullptr;
}

BasicConstructionReport verify_basic_construction(const WhaAction& act, const CrossedProduct& cp,
                                                  const Tolerance& tol) {
  const WeakHopfAlgebra& h = act.acting;
  const FinDimAlgebra& m = act.target;
  const FinDimAlgebra& m2 = cp.algebra;
  const InvariantSubalgebra inv = invariants(act, tol);
  const SubspaceBasis& n_sub = inv.space;
  BasicConstructionReport rep;

  auto structural = [&rep](std::string name, double residual) {
    ItemCheck c;
    c.name = std::move(name);
    c.distance = residual;
    c.passed = residual < kSubspaceTol;
    rep.items.push_back(c);
  };

  const Vec e = cp.embed_a * require_haar(h, tol);
  structural("jones-projection", std::max(max_abs(m2.multiply(e, e) - e), max_abs(m2.star(e) - e)));
  double ce = 0.0;
  for (int j = 0; j < m.dim(); ++j) {
    const Vec x = cp.embed_m.col(j);
    const Vec ex = cp.embed_m * (inv.expectation.col(j));
    ce = std::max(ce, max_abs(m2.multiply(m2.multiply(e, x), e) - m2.multiply(ex, e)));
  }
  structural("conditional-expectation", ce);
  Mat gens(m2.dim(), m.dim() + 1);
  gens << cp.embed_m, e;
  const SubspaceBasis generated = generated_subalgebra(m2, column_space(gens, tol), tol);
  {
    ItemCheck c;
    c.name = "generates";
    c.lhs_dim = generated.rank();
    c.rhs_dim = m2.dim();
    c.distance = c.lhs_dim == c.rhs_dim ? 0.0 : 1.0;
    c.passed = c.lhs_dim == c.rhs_dim;
    rep.items.push_back(c);
  }

  const SubspaceBasis n_in_m2 = image(cp.embed_m, n_sub, tol);
  const SubspaceBasis n_comm_m = commutant_in(n_sub, m, tol);
  rep.items.push_back(compare("N'M = A^L", image(cp.embed_m, n_comm_m, tol), image(cp.embed_a, h.sub.left, tol)));
  rep.items.push_back(compare("M'M2 = A^R", commutant_in(column_space(cp.embed_m, tol), m2, tol),
                              image(cp.embed_a, h.sub.right, tol)));
  rep.items.push_back(compare("N'M2 = A", commutant_in(n_in_m2, m2, tol), column_space(cp.embed_a, tol)));
  rep.items.push_back(compare("Z(N) = Z^L", image(cp.embed_m, intersect(n_sub, n_comm_m, tol), tol),
                              image(cp.embed_a, h.sub.left_center, tol)));
  rep.items.push_back(compare("Z(M) = A^L meet A^R", image(cp.embed_m, center(m, tol), tol),
                              image(cp.embed_a, intersect(h.sub.left, h.sub.right, tol), tol)));
  rep.items.push_back(compare("Z(M2) = Z^R", center(m2, tol), image(cp.embed_a, h.sub.right_center, tol)));

  rep.ok = std::all_of(rep.items.begin(), rep.items.end(), [](const ItemCheck& c) { return c.passed; });
  return rep;
}

GaloisMap galois_map(const WhaAction& act, const Tolerance& tol) {
  check_shapes(act);
  const WeakHopfAlgebra& h = act.acting;
  const FinDimAlgebra& m = act.target;
  const FinDimAlgebra dual = dual_wba(h.wba).algebra();
  const int n = h.dim();
  const int dm = m.dim();
  const SubspaceBasis n_sub = invariants(act, tol).space;
  const SubspaceBasis& al = h.sub.left;
  GaloisMap g;

  // Source M (x)_N M: relations m n (x) m' - m (x) n m'.
  Mat src_rel(dm * dm, n_sub.rank() * dm * dm);
  int col = 0;
  for (int c = 0; c < n_sub.rank(); ++c) {
    const Mat right_n = m.right_matrix(n_sub.basis.col(c));
    const Mat left_n = m.left_matrix(n_sub.basis.col(c));
    for (int j = 0; j < dm; ++j)
      for (int l = 0; l < dm; ++l)
        src_rel.col(col++) = kron(right_n * unit_vector(dm, j), unit_vector(dm, l)) -
                             kron(unit_vector(dm, j), left_n * unit_vector(dm, l));
  }
  const SubspaceBasis src_space = column_space(src_rel, tol);
  const Mat qs = complement(src_space.basis, dm * dm, tol);

  // Target M (x)_{A^L} A^: relations m . l (x) phi - m (x) phi (eps <- l).
  auto module_matrix = [&](const Vec& l) {
    return dual.right_matrix(hit_functional_right(h.wba, h.wba.counit(), l));
  };
  double module = 0.0;
  for (int c = 0; c < al.rank(); ++c)
    for (int d = 0; d < al.rank(); ++d) {
      const Vec lc = al.basis.col(c);
      const Vec ld = al.basis.col(d);
      module = std::max(module,
                        max_abs(module_matrix(lc) * module_matrix(ld) - module_matrix(h.algebra().multiply(lc, ld))));
    }
  g.module_residual = module;
  Mat tgt_rel(dm * n, al.rank() * dm * n);
  col = 0;
  for (int c = 0; c < al.rank(); ++c) {
    const Mat right_l = m.right_matrix(act(al.basis.col(c)) * m.unit());
    const Mat on_dual = module_matrix(al.basis.col(c));
    for (int j = 0; j < dm; ++j)
      for (int i = 0; i < n; ++i)
        tgt_rel.col(col++) = kron(right_l * unit_vector(dm, j), unit_vector(n, i)) -
                             kron(unit_vector(dm, j), on_dual * unit_vector(n, i));
  }
  const SubspaceBasis tgt_space = column_space(tgt_rel, tol);
  const Mat qt = complement(tgt_space.basis, dm * n, tol);

  // m_j (x) m_l -> sum_i m_j alpha_{e_i}(m_l) (x) e^i
  Mat raw(dm * n, dm * dm);
  for (int j = 0; j < dm; ++j)
    for (int l = 0; l < dm; ++l) {
      Mat out(dm, n);
      for (int i = 0; i < n; ++i) out.col(i) = m.left(j) * act.alpha[i].col(l);
      raw.col(j * dm + l) = as_vector(out);
    }
  const double scale = std::max(1.0, max_abs(raw));
  g.descent_residual = src_space.rank() ? max_abs(qt.adjoint() * raw * src_space.basis) : 0.0;
  if (g.descent_residual > kSubspaceTol * scale) {
    std::ostringstream msg;
    msg << "canonical map does not descend to the relative tensor products (residual " << g.descent_residual
        << ")";
    throw Error(ErrorCode::IllDefinedProduct, msg.str());
  }
  g.map = qt.adjoint() * raw * qs;
  g.source_dim = static_cast<int>(qs.cols());
  g.target_dim = static_cast<int>(qt.cols());
  g.rank = g.map.size() ? numerical_rank(g.map, tol) : 0;
  g.bijective = g.source_dim == g.target_dim && g.rank == g.source_dim;
  return g;
}

bool equal_up_to_permutation(const Eigen::MatrixXi& a, const Eigen::MatrixXi& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  auto sorted_columns = [](const Eigen::MatrixXi& x) {
    std::vector<std::vector<int>> cols(x.cols());
    for (int c = 0; c < x.cols(); ++c)
      for (int r = 0; r < x.rows(); ++r) cols[c].push_back(x(r, c));
    std::sort(cols.begin(), cols.end());
    return cols;
  };
  const auto target = sorted_columns(b);
  std::vector<int> perm(a.rows());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Eigen::MatrixXi p(a.rows(), a.cols());
    for (int r = 0; r < a.rows(); ++r) p.row(r) = a.row(perm[r]);
    if (sorted_columns(p) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

SmashProduct smash_product(const WeakHopfAlgebra& h, const Tolerance& tol) {
  SmashProduct s;
  s.action = dual_arrow_action(h, tol);
  const ValidationReport v = validate_action(s.action, tol);
  if (!v.ok) {
    std::string failed;
    for (const AxiomResidual& x : v.axioms)
      if (!x.passed) failed += (failed.empty() ? "" : ", ") + x.name;
    throw Error(ErrorCode::ValidationError, "arrow action of the dual fails: " + failed);
  }
  s.product = crossed_product(s.action, tol);
  s.semisimple = is_semisimple(s.product.algebra, tol);
  if (!s.product.algebra.has_involution() || !h.algebra().has_involution()) return s;
  s.over_a = inclusion_matrix(s.product.algebra, column_space(s.product.embed_m, tol), tol);
  s.left_in_a = inclusion_matrix(h.algebra(), h.sub.left, tol);
  s.basic_construction = equal_up_to_permutation(s.over_a.lambda, s.left_in_a.lambda.transpose());
  return s;
}

}  // namespace whakit
