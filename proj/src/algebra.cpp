#include "whakit/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace whakit {

namespace {

std::string dims(Eigen::Index got, Eigen::Index want) {
  std::ostringstream os;
  os << "got length " << got << ", expected " << want;
  return os.str();
}

// Multiplication by x restricted to an invariant subspace, in its coordinates.
Mat restricted_left(const FinDimAlgebra& a, const SubspaceBasis& s, const Vec& x) {
  return s.basis.adjoint() * a.left_matrix(x) * s.basis;
}

constexpr int kMaxDraws = 8;

}  // namespace

FinDimAlgebra::FinDimAlgebra(std::vector<std::string> labels, std::vector<Mat> left_mult, Vec unit,
                             std::optional<Mat> involution)
    : labels_(std::move(labels)), left_(std::move(left_mult)), unit_(std::move(unit)),
      involution_(std::move(involution)) {
  const auto n = static_cast<Eigen::Index>(left_.size());
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "algebra must have positive dimension");
  if (labels_.empty()) {
    for (Eigen::Index i = 0; i < n; ++i) labels_.push_back("e" + std::to_string(i));
  }
  if (static_cast<Eigen::Index>(labels_.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "basis labels: " + dims(labels_.size(), n));
  for (const Mat& l : left_)
    if (l.rows() != n || l.cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "structure constants must be n x n x n");
  if (unit_.size() != n) throw Error(ErrorCode::DimensionMismatch, "unit: " + dims(unit_.size(), n));
  if (involution_ && (involution_->rows() != n || involution_->cols() != n))
    throw Error(ErrorCode::DimensionMismatch, "involution must be n x n");
  right_.assign(n, Mat::Zero(n, n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) right_[j].col(i) = left_[i].col(j);
}

FinDimAlgebra FinDimAlgebra::from_products(std::vector<std::string> labels,
                                           const std::function<Vec(int, int)>& product, Vec unit,
                                           std::optional<Mat> involution) {
  const auto n = static_cast<int>(unit.size());
  std::vector<Mat> left(n, Mat::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec p = product(i, j);
      if (p.size() != n) throw Error(ErrorCode::DimensionMismatch, "product: " + dims(p.size(), n));
      left[i].col(j) = p;
    }
  return FinDimAlgebra(std::move(labels), std::move(left), std::move(unit), std::move(involution));
}

const Mat& FinDimAlgebra::involution() const {
  if (!involution_) throw Error(ErrorCode::NoInvolution, "algebra has no involution");
  return *involution_;
}

void FinDimAlgebra::check_vector(const Vec& v) const {
  if (v.size() != dim()) throw Error(ErrorCode::DimensionMismatch, dims(v.size(), dim()));
}

Vec FinDimAlgebra::basis_vector(int i) const {
  Vec v = Vec::Zero(dim());
  v(i) = 1.0;
  return v;
}

Vec FinDimAlgebra::multiply(const Vec& a, const Vec& b) const {
  check_vector(a);
  check_vector(b);
  Vec out = Vec::Zero(dim());
  for (int i = 0; i < dim(); ++i)
    if (a(i) != Scalar(0)) out.noalias() += a(i) * (left_[i] * b);
  return out;
}

Mat FinDimAlgebra::left_matrix(const Vec& a) const {
  check_vector(a);
  Mat out = Mat::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    if (a(i) != Scalar(0)) out += a(i) * left_[i];
  return out;
}

Mat FinDimAlgebra::right_matrix(const Vec& b) const {
  check_vector(b);
  Mat out = Mat::Zero(dim(), dim());
  for (int j = 0; j < dim(); ++j)
    if (b(j) != Scalar(0)) out += b(j) * right_[j];
  return out;
}

Vec FinDimAlgebra::star(const Vec& a) const {
  check_vector(a);
  return involution() * a.conjugate();
}

FinDimAlgebra FinDimAlgebra::with_involution(std::optional<Mat> involution) const {
  return FinDimAlgebra(labels_, left_, unit_, std::move(involution));
}

AlgebraValidation validate_algebra(const FinDimAlgebra& a, const Tolerance& tol) {
  AlgebraValidation v;
  const int n = a.dim();
  double scale = 1.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, max_abs(a.left(i)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat lhs = a.left_matrix(a.left(i).col(j));
      v.associativity = std::max(v.associativity, max_abs(lhs - a.left(i) * a.left(j)));
    }
  const Mat id = Mat::Identity(n, n);
  v.unit = std::max(max_abs(a.left_matrix(a.unit()) - id), max_abs(a.right_matrix(a.unit()) - id));
  v.ok = tol.close(v.associativity, scale * scale) && tol.close(v.unit, scale);
  if (a.has_involution()) {
    const Mat& j = a.involution();
    double anti = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        anti = std::max(anti, max_abs(a.star(a.left(p).col(q)) - a.multiply(j.col(q), j.col(p))));
    v.star_antimultiplicative = anti;
    v.star_involutive = max_abs(j * j.conjugate() - id);
    v.star_unit = max_abs(a.star(a.unit()) - a.unit());
    v.ok = v.ok && tol.close(anti, scale * scale) && tol.close(*v.star_involutive, scale) &&
           tol.close(*v.star_unit, 1.0);
  }
  return v;
}

bool is_closed_under_product(const FinDimAlgebra& a, const SubspaceBasis& s, const Tolerance& tol) {
  for (int i = 0; i < s.rank(); ++i)
    for (int j = 0; j < s.rank(); ++j) {
      Vec p = a.multiply(s.basis.col(i), s.basis.col(j));
      if (!tol.close(s.distance(p), std::max(1.0, p.norm()))) return false;
    }
  return true;
}

FinDimAlgebra subalgebra(const FinDimAlgebra& a, const SubspaceBasis& s, const Tolerance& tol) {
  if (s.ambient_dim() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "subspace ambient dimension");
  if (!is_closed_under_product(a, s, tol))
    throw Error(ErrorCode::DimensionMismatch, "subspace is not closed under multiplication");
  const int k = s.rank();
  const Mat& b = s.basis;
  std::vector<Mat> left(k, Mat::Zero(k, k));
  for (int i = 0; i < k; ++i) left[i] = b.adjoint() * a.left_matrix(b.col(i)) * b;
  std::optional<Mat> inv;
  if (a.has_involution()) inv = Mat(b.adjoint() * a.involution() * b.conjugate());
  return FinDimAlgebra({}, std::move(left), b.adjoint() * a.unit(), std::move(inv));
}

SubspaceBasis center(const FinDimAlgebra& a, const Tolerance& tol) {
  const int n = a.dim();
  Mat stacked(static_cast<Eigen::Index>(n) * n, n);
  for (int j = 0; j < n; ++j) stacked.middleRows(static_cast<Eigen::Index>(j) * n, n) = a.right(j) - a.left(j);
  return kernel(stacked, tol);
}

SubspaceBasis commutant_in(const SubspaceBasis& s, const FinDimAlgebra& a, const Tolerance& tol) {
  const int n = a.dim();
  if (s.rank() == 0) return SubspaceBasis(Mat::Identity(n, n));
  Mat stacked(static_cast<Eigen::Index>(s.rank()) * n, n);
  for (int j = 0; j < s.rank(); ++j)
    stacked.middleRows(static_cast<Eigen::Index>(j) * n, n) =
        a.right_matrix(s.basis.col(j)) - a.left_matrix(s.basis.col(j));
  return kernel(stacked, tol);
}

SubspaceBasis generated_subalgebra(const FinDimAlgebra& a, const SubspaceBasis& s, const Tolerance& tol) {
  Mat gens(a.dim(), s.rank() + 1);
  gens << a.unit(), s.basis;
  SubspaceBasis cur = column_space(gens, tol);
  while (true) {
    const int r = cur.rank();
    Mat cols(a.dim(), r + r * r);
    cols.leftCols(r) = cur.basis;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) cols.col(r + i * r + j) = a.multiply(cur.basis.col(i), cur.basis.col(j));
    SubspaceBasis next = column_space(cols, tol);
    if (next.rank() == r) return next;
    cur = std::move(next);
  }
}

double trace_form_min_singular_value(const FinDimAlgebra& a) {
  const int n = a.dim();
  Mat t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = a.left(i).transpose().cwiseProduct(a.left(j)).sum();
  return min_singular_value(t);
}

bool is_semisimple(const FinDimAlgebra& a, const Tolerance& tol) {
  return trace_form_min_singular_value(a) > tol.abs_tol;
}

std::vector<Vec> minimal_idempotents(const FinDimAlgebra& a, const SubspaceBasis& s, const Tolerance& tol) {
  const int k = s.rank();
  Rng rng;
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    Vec z = s.basis * rng.complex_vector(k);
    Eigen::ComplexEigenSolver<Mat> es(restricted_left(a, s, z));
    std::vector<Vec> out;
    bool good = es.info() == Eigen::Success;
    Vec total = Vec::Zero(a.dim());
    for (int q = 0; good && q < k; ++q) {
      Vec u = s.basis * es.eigenvectors().col(q);
      Vec u2 = a.multiply(u, u);
      const Scalar lambda = u.dot(u2) / u.squaredNorm();
      if (std::abs(lambda) < 1e-12) {
        good = false;
        break;
      }
      Vec e = u / lambda;
      for (int it = 0; it < 3; ++it) {  // p <- 3p^2 - 2p^3 removes the noise of the eigensolver
        const Vec e2 = a.multiply(e, e);
        e = 3.0 * e2 - 2.0 * a.multiply(e2, e);
      }
      if (!tol.close(max_abs(a.multiply(e, e) - e), std::max(1.0, max_abs(e)))) good = false;
      total += e;
      out.push_back(std::move(e));
    }
    if (good && tol.close(max_abs(total - a.unit()), std::max(1.0, max_abs(a.unit())) * k)) return out;
  }
  throw Error(ErrorCode::NotSemisimple, "commutative subalgebra is not spanned by idempotents");
}

BlockDecomposition block_decomposition(const FinDimAlgebra& a, const Tolerance& tol) {
  if (!is_semisimple(a, tol)) throw Error(ErrorCode::NotSemisimple, "regular trace form is degenerate");
  const SubspaceBasis z = center(a, tol);
  std::vector<Vec> idem = minimal_idempotents(a, z, tol);
  BlockDecomposition bd;
  for (Vec& e : idem) {
    for (Eigen::Index i = 0; i < e.size(); ++i) {
      if (std::abs(e(i).real()) < 1e-14) e(i).real(0.0);
      if (std::abs(e(i).imag()) < 1e-14) e(i).imag(0.0);
    }
    const double d = a.regular_trace(e).real();
    const double root = std::sqrt(std::max(0.0, d));
    const double n = std::round(root);
    if (n < 1 || std::abs(root - n) > 1e-6) {
      std::ostringstream os;
      os << "dim(z_q A) = " << d << " is not a perfect square";
      throw Error(ErrorCode::NonIntegerBlockSize, os.str());
    }
    bd.blocks.push_back(Block{e, static_cast<int>(n), ""});
  }
  auto support = [](const Vec& v) {
    std::vector<int> s;
    const double top = max_abs(v);
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (std::abs(v(i)) > 1e-8 * top) s.push_back(static_cast<int>(i));
    return s;
  };
  auto key = [](const Vec& v) {
    std::vector<double> k;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      k.push_back(std::round(v(i).real() * 1e8) / 1e8);
      k.push_back(std::round(v(i).imag() * 1e8) / 1e8);
    }
    return k;
  };
  std::stable_sort(bd.blocks.begin(), bd.blocks.end(), [&](const Block& x, const Block& y) {
    if (x.size != y.size) return x.size < y.size;
    auto sx = support(x.central_idempotent), sy = support(y.central_idempotent);
    if (sx != sy) return sx < sy;
    return key(x.central_idempotent) > key(y.central_idempotent);
  });
  for (std::size_t q = 0; q < bd.blocks.size(); ++q) bd.blocks[q].label = "q" + std::to_string(q);
  return bd;
}

Scalar block_trace(const FinDimAlgebra& a, const Block& q, const Vec& x) {
  return a.regular_trace(a.multiply(q.central_idempotent, x)) / static_cast<double>(q.size);
}

Vec minimal_projection(const FinDimAlgebra& a, const Block& q, const Tolerance& tol) {
  if (!a.has_involution()) throw Error(ErrorCode::NoInvolution, "minimal projections need an involution");
  const Vec& zq = q.central_idempotent;
  if (q.size == 1) return zq;
  Rng rng;
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    Vec y = rng.complex_vector(a.dim());
    Vec x = a.multiply(zq, y + a.star(y));
    Eigen::ComplexEigenSolver<Mat> es(a.left_matrix(x), false);
    std::vector<Scalar> distinct;
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const Scalar ev = es.eigenvalues()(i);
      bool seen = false;
      for (const Scalar& d : distinct) seen = seen || std::abs(d - ev) < 1e-6 * scale;
      if (!seen) distinct.push_back(ev);
    }
    // The eigenvalue best separated from the others keeps the interpolation well conditioned.
    Scalar lambda = distinct.front();
    double best_gap = -1.0;
    for (const Scalar& u : distinct) {
      if (std::abs(u) < 1e-6 * scale) continue;  // the other blocks
      double gap = std::numeric_limits<double>::infinity();
      for (const Scalar& v : distinct)
        if (&u != &v) gap = std::min(gap, std::abs(u - v));
      if (gap > best_gap) best_gap = gap, lambda = u;
    }
    Vec p = zq;
    for (const Scalar& mu : distinct) {
      if (std::abs(mu - lambda) < 1e-6 * scale) continue;
      p = a.multiply(p, (x - mu * a.unit()) / (lambda - mu));
    }
    // Purify: p <- 3p^2 - 2p^3, kept self-adjoint.
    for (int it = 0; it < 4; ++it) {
      p = 0.5 * (p + a.star(p));
      const Vec p2 = a.multiply(p, p);
      p = 3.0 * p2 - 2.0 * a.multiply(p2, p);
    }
    const double bound = std::max(1.0, max_abs(p));
    if (tol.close(max_abs(a.multiply(p, p) - p), bound * 1e3) && tol.close(max_abs(a.star(p) - p), bound * 1e3) &&
        std::abs(a.regular_trace(p) - Scalar(q.size)) < 1e-6)
      return p;
  }
  throw Error(ErrorCode::NotIdempotent, "could not isolate a minimal projection in block " + q.label);
}

InclusionMatrix inclusion_matrix(const FinDimAlgebra& a, const SubspaceBasis& sub, const Tolerance& tol) {
  if (!sub.contains(a.unit(), tol)) throw Error(ErrorCode::DimensionMismatch, "inclusion is not unital");
  const FinDimAlgebra b = subalgebra(a, sub, tol);
  InclusionMatrix inc;
  inc.blocks = block_decomposition(a, tol);
  inc.sub_blocks = block_decomposition(b, tol);
  for (Block& blk : inc.sub_blocks.blocks) blk.central_idempotent = sub.basis * blk.central_idempotent;
  const int nb = inc.sub_blocks.count(), na = inc.blocks.count();
  inc.lambda.resize(nb, na);
  for (int mu = 0; mu < nb; ++mu)
    for (int q = 0; q < na; ++q) {
      const Block& bq = inc.blocks.blocks[q];
      const Block& bm = inc.sub_blocks.blocks[mu];
      const double raw = a.regular_trace(a.multiply(bq.central_idempotent, bm.central_idempotent)).real() /
                         (bq.size * bm.size);
      const double r = std::round(raw);
      if (std::abs(raw - r) > 1e-6 || r < 0) {
        std::ostringstream os;
        os << "multiplicity " << raw << " for blocks (" << mu << ", " << q << ")";
        throw Error(ErrorCode::NonIntegerMultiplicity, os.str());
      }
      inc.lambda(mu, q) = static_cast<int>(r);
    }
  for (int q = 0; q < na; ++q) {
    int total = 0;
    for (int mu = 0; mu < nb; ++mu) total += inc.lambda(mu, q) * inc.sub_blocks.blocks[mu].size;
    if (total != inc.blocks.blocks[q].size)
      throw Error(ErrorCode::NonIntegerMultiplicity, "block sizes inconsistent with multiplicities");
  }
  return inc;
}

std::vector<MarkovTrace> markov_trace_components(const InclusionMatrix& inc) {
  const Eigen::Index nb = inc.lambda.rows(), na = inc.lambda.cols();
  const RealMat lam = inc.lambda.cast<double>();
  RealMat graph = RealMat::Zero(nb + na, nb + na);
  graph.topRightCorner(nb, na) = lam;
  graph.bottomLeftCorner(na, nb) = lam.transpose();
  std::vector<MarkovTrace> out;
  for (const std::vector<int>& comp : connected_components(graph)) {
    MarkovTrace mt;
    for (int v : comp) (v < nb ? mt.sub_blocks : mt.blocks).push_back(v < nb ? v : v - static_cast<int>(nb));
    if (mt.blocks.empty() || mt.sub_blocks.empty()) continue;
    RealMat l(mt.sub_blocks.size(), mt.blocks.size());
    for (std::size_t i = 0; i < mt.sub_blocks.size(); ++i)
      for (std::size_t j = 0; j < mt.blocks.size(); ++j) l(i, j) = lam(mt.sub_blocks[i], mt.blocks[j]);
    mt.index = perron_frobenius(l * l.transpose()).eigenvalue;
    RealVec t = perron_frobenius(l.transpose() * l).eigenvector;
    double norm = 0.0;
    for (std::size_t j = 0; j < mt.blocks.size(); ++j) norm += inc.blocks.blocks[mt.blocks[j]].size * t(j);
    mt.weights = t / norm;
    mt.sub_weights = l * mt.weights;
    out.push_back(std::move(mt));
  }
  return out;
}

MarkovTrace markov_trace(const InclusionMatrix& inc) {
  std::vector<MarkovTrace> comps = markov_trace_components(inc);
  if (comps.size() != 1) throw Error(ErrorCode::NotConnected, "inclusion has " + std::to_string(comps.size()) +
                                                                   " connected components");
  return comps.front();
}

bool is_positive(const FinDimAlgebra& a, const Vec& x, const Tolerance& tol) {
  const double scale = std::max(1.0, max_abs(x));
  if (!tol.close(max_abs(a.star(x) - x), scale)) return false;
  Eigen::ComplexEigenSolver<Mat> es(a.left_matrix(x), false);
  const auto& ev = es.eigenvalues();
  const double spread = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i).real() < -1e-7 * spread || std::abs(ev(i).imag()) > 1e-7 * spread) return false;
  return true;
}

WatataniIndex watatani_index(const FinDimAlgebra& a, const Mat& e, const Tolerance& tol) {
  const int n = a.dim();
  if (e.rows() != n || e.cols() != n) throw Error(ErrorCode::DimensionMismatch, "E must be n x n");
  const double scale = std::max(1.0, max_abs(e));
  if (!tol.close(max_abs(e * e - e), scale * scale))
    throw Error(ErrorCode::NotConditionalExpectation, "E is not idempotent");
  if (!tol.close(max_abs(e * a.unit() - a.unit()), scale))
    throw Error(ErrorCode::NotConditionalExpectation, "E(1) != 1");
  const SubspaceBasis range = column_space(e, tol);
  for (int i = 0; i < range.rank(); ++i) {
    const Mat lb = a.left_matrix(range.basis.col(i));
    const Mat rb = a.right_matrix(range.basis.col(i));
    if (!tol.close(max_abs(e * lb - lb * e), scale * scale * 10) || !tol.close(max_abs(e * rb - rb * e), scale * scale * 10))
      throw Error(ErrorCode::NotConditionalExpectation, "E is not a bimodule map over its range");
  }
  if (a.has_involution()) {
    for (int i = 0; i < n; ++i) {
      const Vec x = a.basis_vector(i);
      if (!tol.close(max_abs(e * a.star(x) - a.star(Vec(e * x))), scale))
        throw Error(ErrorCode::NotConditionalExpectation, "E does not commute with the involution");
    }
    Rng rng;
    for (int i = 0; i < n + 4; ++i) {
      const Vec x = i < n ? a.basis_vector(i) : rng.complex_vector(n);
      if (!is_positive(a, e * a.multiply(a.star(x), x), Tolerance::uniform(1e-7)))
        throw Error(ErrorCode::NotConditionalExpectation, "E is not positive");
    }
  }
  // Quasi-basis: sum_ab T_ab e_a E(e_b x) = x for all x.
  const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
  Mat phi(n2, n2);
  std::vector<Mat> el(n);
  for (int b = 0; b < n; ++b) el[b] = e * a.left(b);
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < n; ++b) {
      const Mat m = a.left(i) * el[b];
      phi.col(static_cast<Eigen::Index>(i) * n + b) = Eigen::Map<const Vec>(m.data(), n2);
    }
  const Mat id = Mat::Identity(n, n);
  const LeastSquares ls = solve_least_squares(phi, Eigen::Map<const Vec>(id.data(), n2));
  WatataniIndex out;
  out.quasi_basis_residual = ls.residual;
  if (!tol.close(ls.residual, std::max(1.0, max_abs(ls.solution)) * 1e2))
    throw Error(ErrorCode::NoQuasiBasis, "no quasi-basis solves the reconstruction identity");
  out.element = Vec::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int b = 0; b < n; ++b) {
      const Scalar t = ls.solution(static_cast<Eigen::Index>(i) * n + b);
      if (t != Scalar(0)) out.element += t * a.left(i).col(b);
    }
  for (int i = 0; i < n; ++i) {
    const Vec x = a.basis_vector(i);
    out.central_residual = std::max(out.central_residual,
                                    max_abs(a.multiply(out.element, x) - a.multiply(x, out.element)));
  }
  const Vec& one = a.unit();
  const Scalar c = one.dot(out.element) / one.squaredNorm();
  if (tol.close(max_abs(out.element - c * one) , std::max(1.0, max_abs(out.element)) * 1e2)) out.scalar = c;
  return out;
}

std::optional<Vec> inverse(const FinDimAlgebra& a, const Vec& x, const Tolerance& tol) {
  const Mat lx = a.left_matrix(x);
  const Svd d = svd(lx);
  if (d.s(d.s.size() - 1) <= rank_threshold(d.s, tol)) return std::nullopt;
  return Vec(svd_solve(d, a.unit(), 0.0));
}

Mat functional_gram(const FinDimAlgebra& a, const Vec& phi) {
  const int n = a.dim();
  Mat g(n, n);
  for (int i = 0; i < n; ++i) {
    const Mat ls = a.left_matrix(a.star(a.basis_vector(i)));
    g.row(i) = phi.transpose() * ls;
  }
  return g;
}

Vec hermitian_function_of_element(const FinDimAlgebra& a, const Vec& phi, const Vec& x,
                                  const std::function<double(double)>& f, const Tolerance& tol) {
  if (!tol.close(max_abs(a.star(x) - x), std::max(1.0, max_abs(x))))
    throw Error(ErrorCode::NotPositive, "functional calculus needs a self-adjoint element");
  const Mat g = functional_gram(a, phi);
  const Mat gh = 0.5 * (g + g.adjoint());
  Eigen::LLT<Mat> llt(gh);
  if (llt.info() != Eigen::Success || !tol.close(max_abs(g - gh), std::max(1.0, max_abs(g))))
    throw Error(ErrorCode::NotPositive, "functional is not positive definite");
  // <u, v> = u^H G v = (L^H u)^H (L^H v): coordinates w = L^H u are orthonormal.
  const Mat lh = llt.matrixU();
  const Mat lx = lh * a.left_matrix(x);
  const Mat herm = lh.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(lx);
  const Mat fx = hermitian_function(herm, f);
  const Vec w = fx * (lh * a.unit());
  return lh.triangularView<Eigen::Upper>().solve(w);
}

}  // namespace whakit
