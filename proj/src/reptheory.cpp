#include "whakit/reptheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "whakit/linalg.hpp"

namespace whakit {

namespace {

// A coarse tolerance for the integrality and proportionality decisions of the
// sector pipeline, which compound several eigen- and singular value solves.
constexpr double kSectorTol = 1e-6;

Vec unit_vector(int n, int i) {
  Vec e = Vec::Zero(n);
  e(i) = 1.0;
  return e;
}

// Restriction of the left regular representation to an invariant subspace spanned
// by the columns of w, which are orthonormal for the form g.
Representation compress_regular(const FinDimAlgebra& a, const Mat& g, const Mat& w) {
  Representation r;
  const Mat wg = w.adjoint() * g;
  for (int i = 0; i < a.dim(); ++i) r.matrices.push_back(wg * a.left(i) * w);
  r.unitary = a.has_involution() && preserves_star(a, r, Tolerance::uniform(1e-8));
  return r;
}

// Orthonormal basis for the form g of the span of q's columns; g positive definite there.
Mat orthonormalize(const Mat& q, const Mat& g) {
  const Mat gq = q.adjoint() * g * q;
  return q * hermitian_function(gq, [](double x) { return 1.0 / std::sqrt(x); });
}

Mat trace_form(const FinDimAlgebra& a) {
  Vec tr(a.dim());
  for (int i = 0; i < a.dim(); ++i) tr(i) = a.left(i).trace();
  Mat g = functional_gram(a, tr);
  return 0.5 * (g + g.adjoint());
}

double relative(double x, double scale) { return scale > 0.0 ? x / scale : x; }

struct Proportionality {
  int vacuum = -1;
  double constant = 0.0;
  double residual = 0.0;
};

// Finds the single vacuum mu with m = c D_eps(z^L_mu).
std::optional<Proportionality> proportional_to_vacuum(const RepContext& ctx, const Mat& m) {
  const double scale = max_abs(m);
  if (scale == 0.0) return std::nullopt;
  std::optional<Proportionality> found;
  for (int mu = 0; mu < static_cast<int>(ctx.vacua.size()); ++mu) {
    const Mat p = ctx.d_eps.rep(ctx.vacua[mu].projection);
    const Scalar c = (m * p).trace() / p.trace();
    const double res = relative(max_abs(m - c * p), scale);
    if (res < kSectorTol && c.real() > 0.0) {
      if (found) return std::nullopt;
      found = Proportionality{mu, c.real(), res};
    }
  }
  return found;
}

struct Candidate {
  Mat raw;
  Proportionality prop;
};

}  // namespace

Mat Representation::operator()(const Vec& a) const {
  Mat out = Mat::Zero(carrier_dim(), carrier_dim());
  for (std::size_t i = 0; i < matrices.size(); ++i)
    if (a(static_cast<Eigen::Index>(i)) != Scalar(0)) out += a(static_cast<Eigen::Index>(i)) * matrices[i];
  return out;
}

double representation_residual(const FinDimAlgebra& a, const Representation& d) {
  if (static_cast<int>(d.matrices.size()) != a.dim())
    throw Error(ErrorCode::DimensionMismatch, "representation has the wrong number of matrices");
  double r = max_abs(d(a.unit()) - Mat::Identity(d.carrier_dim(), d.carrier_dim()));
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      r = std::max(r, max_abs(d.matrices[i] * d.matrices[j] - d(a.left(i).col(j))));
  return r;
}

bool preserves_star(const FinDimAlgebra& a, const Representation& d, const Tolerance& tol) {
  if (!a.has_involution()) return false;
  for (int i = 0; i < a.dim(); ++i) {
    const Mat lhs = d(a.star(unit_vector(a.dim(), i)));
    if (!tol.close(max_abs(lhs - d.matrices[i].adjoint()), max_abs(d.matrices[i]))) return false;
  }
  return true;
}

Representation direct_sum(const Representation& x, const Representation& y) {
  if (x.matrices.size() != y.matrices.size()) throw Error(ErrorCode::DimensionMismatch, "direct sum of unrelated representations");
  const int m = x.carrier_dim(), k = y.carrier_dim();
  Representation r;
  for (std::size_t i = 0; i < x.matrices.size(); ++i) {
    Mat s = Mat::Zero(m + k, m + k);
    s.topLeftCorner(m, m) = x.matrices[i];
    s.bottomRightCorner(k, k) = y.matrices[i];
    r.matrices.push_back(std::move(s));
  }
  r.unitary = x.unitary && y.unitary;
  return r;
}

Representation regular_representation(const FinDimAlgebra& a) {
  Representation r;
  for (int i = 0; i < a.dim(); ++i) r.matrices.push_back(a.left(i));
  r.unitary = preserves_star(a, r, Tolerance::uniform(1e-8));
  return r;
}

GnsRepresentation gns_representation(const FinDimAlgebra& a, const Vec& phi, const Tolerance& tol) {
  Mat g = functional_gram(a, phi);
  g = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  const RealVec& w = es.eigenvalues();
  const double top = std::max(std::abs(w.minCoeff()), std::abs(w.maxCoeff()));
  if (w.minCoeff() < -tol.bound(top))
    throw Error(ErrorCode::NotPositive, "functional is not positive: Gram eigenvalue " + std::to_string(w.minCoeff()));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w(i) > tol.bound(top)) keep.push_back(i);
  Mat emb(a.dim(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    emb.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]) / std::sqrt(w(keep[k]));
  normalize_column_phases(emb);
  GnsRepresentation out;
  out.rep = compress_regular(a, g, emb);
  out.embedding = emb;
  out.cyclic_vector = emb.adjoint() * g * a.unit();
  return out;
}

GnsRepresentation gns_counit_rep(const WeakHopfAlgebra& h, const Tolerance& tol) {
  return gns_representation(h.algebra(), h.wba.counit(), tol);
}

std::vector<Representation> irreducible_representations(const FinDimAlgebra& a, const Tolerance& tol) {
  const BlockDecomposition bd = block_decomposition(a, tol);
  if (!a.has_involution()) throw Error(ErrorCode::NoInvolution, "irreducible representations need an involution");
  const Mat g = trace_form(a);
  std::vector<Representation> out;
  for (const Block& q : bd.blocks) {
    const Vec p = minimal_projection(a, q, tol);
    const SubspaceBasis ideal = column_space(a.right_matrix(p), Tolerance::uniform(kSectorTol));
    if (ideal.rank() != q.size)
      throw Error(ErrorCode::MultiplicityNotInteger, "left ideal of a minimal projection has dimension " +
                                                          std::to_string(ideal.rank()) + " in block " + q.label);
    Mat w = orthonormalize(ideal.basis, g);
    normalize_column_phases(w);
    out.push_back(compress_regular(a, g, w));
  }
  return out;
}

Mat raw_tensor(const WeakBialgebra& w, const Representation& d1, const Representation& d2, const Vec& a) {
  const int n = w.dim();
  const Mat delta = w.coproduct_of(a);
  Mat out = Mat::Zero(d1.carrier_dim() * d2.carrier_dim(), d1.carrier_dim() * d2.carrier_dim());
  for (int i = 0; i < n; ++i) {
    if (delta.row(i).cwiseAbs().maxCoeff() == 0.0) continue;
    Mat right = Mat::Zero(d2.carrier_dim(), d2.carrier_dim());
    for (int j = 0; j < n; ++j)
      if (delta(i, j) != Scalar(0)) right += delta(i, j) * d2.matrices[j];
    out += kron(d1.matrices[i], right);
  }
  return out;
}

TensorProduct monoidal_product(const WeakHopfAlgebra& h, const Representation& d1, const Representation& d2,
                               const Tolerance& tol) {
  TensorProduct t;
  t.projection = raw_tensor(h.wba, d1, d2, h.algebra().unit());
  t.isometry = column_space(t.projection, tol).basis;
  normalize_column_phases(t.isometry);
  const Mat vh = t.isometry.adjoint();
  for (int k = 0; k < h.dim(); ++k)
    t.rep.matrices.push_back(vh * raw_tensor(h.wba, d1, d2, unit_vector(h.dim(), k)) * t.isometry);
  t.rep.unitary = d1.unitary && d2.unitary;
  return t;
}

Representation conjugate_rep(const WeakHopfAlgebra& h, const Representation& d, const Vec& g, const Tolerance& tol) {
  const FinDimAlgebra& a = h.algebra();
  Representation r;
  for (int i = 0; i < a.dim(); ++i) r.matrices.push_back(d(a.star(h.antipode.col(i))).conjugate());
  if (d.unitary) {
    // conj(D(S(a))) = Q conj(D(S^-1(a))) Q^-1 with Q = conj(D(g)) positive.
    const Mat q = d(g).conjugate();
    const Mat half = hermitian_function(q, [](double x) { return std::sqrt(std::max(x, 0.0)); });
    const Mat inv_half = hermitian_function(q, [](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) : 0.0; });
    for (Mat& m : r.matrices) m = half * m * inv_half;
    r.unitary = preserves_star(a, r, Tolerance::uniform(std::max(1e-8, tol.abs_tol)));
  }
  return r;
}

Representation conjugate_rep(const WeakHopfAlgebra& h, const Representation& d, const Tolerance& tol) {
  return conjugate_rep(h, d, haar_data(h, tol).grouplike.g, tol);
}

IntertwinerSpace intertwiner_space(const Representation& from, const Representation& to, const Tolerance& tol) {
  if (from.matrices.size() != to.matrices.size())
    throw Error(ErrorCode::DimensionMismatch, "representations of different algebras");
  const int m1 = from.carrier_dim(), m2 = to.carrier_dim();
  const Eigen::Index rows = static_cast<Eigen::Index>(m1) * m2;
  Mat sys(rows * static_cast<Eigen::Index>(from.matrices.size()), rows);
  const Mat i1 = Mat::Identity(m1, m1), i2 = Mat::Identity(m2, m2);
  for (std::size_t k = 0; k < from.matrices.size(); ++k)
    sys.middleRows(static_cast<Eigen::Index>(k) * rows, rows) =
        kron(from.matrices[k].transpose(), i2) - kron(i1, to.matrices[k]);
  IntertwinerSpace out;
  out.rows = m2;
  out.cols = m1;
  Mat basis = kernel(sys, tol).basis;
  normalize_column_phases(basis);
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    Vec v = basis.col(c);
    out.basis.push_back(Eigen::Map<const Mat>(v.data(), m2, m1));
  }
  return out;
}

std::vector<int> block_multiplicities(const BlockDecomposition& blocks, const Representation& d) {
  std::vector<int> out;
  for (const Block& q : blocks.blocks) {
    // D(z_q) is idempotent, so its trace is its rank.
    const double x = d(q.central_idempotent).trace().real() / q.size;
    const double r = std::round(x);
    if (std::abs(x - r) > kSectorTol || r < 0.0) {
      std::ostringstream os;
      os << "block " << q.label << " has multiplicity " << x;
      throw Error(ErrorCode::MultiplicityNotInteger, os.str());
    }
    out.push_back(static_cast<int>(r));
  }
  return out;
}

std::vector<Vacuum> vacua(const WeakHopfAlgebra& h, const GnsRepresentation& d_eps, const BlockDecomposition& blocks,
                          const Tolerance& tol) {
  const FinDimAlgebra& a = h.algebra();
  const std::vector<int> mult = block_multiplicities(blocks, d_eps.rep);
  std::vector<Vec> proj;
  if (h.sub.left_center.rank() == 1)
    proj.push_back(a.unit());
  else
    proj = minimal_idempotents(a, h.sub.left_center, tol);
  std::vector<Vacuum> out;
  for (const Vec& z : proj) {
    Vacuum v;
    v.projection = z;
    v.weight = (h.wba.counit().transpose() * z)(0).real();
    const Mat pz = d_eps.rep(z);
    for (int q = 0; q < blocks.count(); ++q) {
      if (mult[q] == 0) continue;
      const double overlap = (d_eps.rep(blocks.blocks[q].central_idempotent) * pz).trace().real();
      if (overlap > 0.5) {
        if (v.block >= 0)
          throw Error(ErrorCode::MultiplicityNotInteger, "a minimal projection of Z^L meets two vacuum blocks");
        v.block = q;
      }
    }
    if (v.block < 0) throw Error(ErrorCode::MultiplicityNotInteger, "a minimal projection of Z^L meets no block");
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(), [](const Vacuum& x, const Vacuum& y) { return x.block < y.block; });
  return out;
}

RepContext rep_context(const WeakHopfAlgebra& h, const Tolerance& tol) {
  if (!h.algebra().has_involution()) throw Error(ErrorCode::NoInvolution, "sector theory needs a C*-structure");
  RepContext ctx;
  ctx.h = h;
  ctx.blocks = block_decomposition(h.algebra(), tol);
  ctx.irreps = irreducible_representations(h.algebra(), tol);
  ctx.d_eps = gns_counit_rep(h, tol);
  ctx.vacua = vacua(h, ctx.d_eps, ctx.blocks, tol);
  ctx.g = haar_data(h, tol).grouplike.g;
  return ctx;
}

StandardSolution standard_solution(const RepContext& ctx, int q, const Tolerance& tol) {
  const Representation& d = ctx.irreps.at(static_cast<std::size_t>(q));
  const Representation db = conjugate_rep(ctx.h, d, ctx.g, tol);
  const Representation& eps = ctx.d_eps.rep;
  const int m = d.carrier_dim();
  const std::string label = ctx.blocks.blocks[q].label;

  // Searches the intertwiner basis for an element whose R*R is supported on one vacuum.
  auto choose = [&](const Representation& x, const Representation& y, const char* what) {
    const TensorProduct t = monoidal_product(ctx.h, x, y, tol);
    const IntertwinerSpace hom = intertwiner_space(eps, t.rep, Tolerance::uniform(std::max(tol.abs_tol, 1e-9)));
    if (hom.dim() == 0) throw Error(ErrorCode::ZeroIntertwiner, std::string("no intertwiner into ") + what + " for block " + label);
    for (const Mat& b : hom.basis) {
      const Mat raw = t.isometry * b;
      if (auto p = proportional_to_vacuum(ctx, raw.adjoint() * raw)) return Candidate{raw, *p};
    }
    throw Error(ErrorCode::NotProportionalToMinimal,
                std::string("no intertwiner into ") + what + " for block " + label +
                    " has R*R proportional to a single minimal projection of Z^L");
  };
  Candidate r = choose(db, d, "conj(q) (x) q");
  Candidate rb = choose(d, db, "q (x) conj(q)");

  // Phase: first significant coordinate of R real positive.
  {
    Mat col = Eigen::Map<const Mat>(r.raw.data(), r.raw.size(), 1);
    normalize_column_phases(col);
    r.raw = Eigen::Map<const Mat>(col.data(), r.raw.rows(), r.raw.cols());
  }

  // Unit isomorphisms v -> P(v (x) Omega) and v -> P(Omega (x) v).
  const Mat omega = ctx.d_eps.cyclic_vector;
  const Mat im = Mat::Identity(m, m);
  const Mat rho = raw_tensor(ctx.h.wba, d, eps, ctx.h.algebra().unit()) * kron(im, omega);
  const Mat lam = raw_tensor(ctx.h.wba, eps, d, ctx.h.algebra().unit()) * kron(omega, im);
  const Mat y = kron(rb.raw.adjoint(), im) * kron(im, r.raw) * rho;
  const Mat x = lam.completeOrthogonalDecomposition().solve(y);
  const Scalar c = x.trace() / static_cast<double>(m);

  StandardSolution s;
  s.zigzag_residual = std::max(max_abs(x - c * im), max_abs(lam * x - y)) / std::abs(c);
  if (std::abs(c) < kSectorTol || s.zigzag_residual > kSectorTol)
    throw Error(ErrorCode::NotProportionalToMinimal, "conjugate equations have no scalar solution for block " + label);
  const double c1 = r.prop.constant, c2 = rb.prop.constant, ac = std::abs(c);
  s.d = std::sqrt(c1 * c2) / ac;
  const double alpha = std::pow(c2 / c1, 0.25) / std::sqrt(ac), beta = std::pow(c1 / c2, 0.25) / std::sqrt(ac);
  s.r = alpha * r.raw;
  s.r_bar = beta * (c / ac) * rb.raw;
  s.right_vacuum = r.prop.vacuum;
  s.left_vacuum = rb.prop.vacuum;
  const Mat pr = eps(ctx.vacua[s.right_vacuum].projection), pl = eps(ctx.vacua[s.left_vacuum].projection);
  s.proportionality_residual = std::max(max_abs(s.r.adjoint() * s.r - s.d * pr), max_abs(s.r_bar.adjoint() * s.r_bar - s.d * pl));
  return s;
}

SectorTable sector_dimensions(const RepContext& ctx, const Tolerance& tol) {
  SectorTable t;
  t.vacua = ctx.vacua;
  const int v = static_cast<int>(ctx.vacua.size());
  t.d_regular = RealMat::Zero(v, v);
  const FinDimAlgebra& a = ctx.h.algebra();
  for (int q = 0; q < ctx.blocks.count(); ++q) {
    const Block& b = ctx.blocks.blocks[q];
    StandardSolution s;
    try {
      s = standard_solution(ctx, q, tol);
    } catch (const Error& err) {
      throw Error(ErrorCode::VacuumAssignmentFailed, std::string("block ") + b.label + ": " + err.what());
    }
    Sector sec;
    sec.block = q;
    sec.size = b.size;
    sec.left_vacuum = s.left_vacuum;
    sec.right_vacuum = s.right_vacuum;
    sec.d_standard = s.d;
    const double kl = ctx.vacua[s.left_vacuum].weight, kr = ctx.vacua[s.right_vacuum].weight;
    sec.d = block_trace(a, b, ctx.g).real() / std::sqrt(kl * kr);
    if (std::abs(sec.d - sec.d_standard) > kSectorTol * std::max(1.0, sec.d)) {
      std::ostringstream os;
      os << "block " << b.label << ": trace formula gives " << sec.d << ", standard solutions give " << sec.d_standard;
      throw Error(ErrorCode::CrossCheckMismatch, os.str());
    }
    t.d_regular(sec.left_vacuum, sec.right_vacuum) += b.size * sec.d;
    t.sectors.push_back(sec);
  }
  t.delta = perron_frobenius(t.d_regular).eigenvalue;
  return t;
}

SectorTable sector_dimensions(const WeakHopfAlgebra& h, const Tolerance& tol) {
  return sector_dimensions(rep_context(h, tol), tol);
}

RealMat dimension_matrix(const SectorTable& t, const std::vector<int>& multiplicities) {
  if (multiplicities.size() != t.sectors.size())
    throw Error(ErrorCode::DimensionMismatch, "one multiplicity per sector expected");
  const auto v = static_cast<Eigen::Index>(t.vacua.size());
  RealMat out = RealMat::Zero(v, v);
  for (std::size_t q = 0; q < t.sectors.size(); ++q)
    out(t.sectors[q].left_vacuum, t.sectors[q].right_vacuum) += multiplicities[q] * t.sectors[q].d;
  return out;
}

DimensionFactorization factorize_dimension_matrices(const RealMat& d_a, const RealMat& d_a_hat, double max_residual) {
  const Eigen::Index v = d_a.rows(), w = d_a_hat.rows();
  const Eigen::Index unknowns = v * w, eqs = v * v + w * w;
  auto residual = [&](const RealMat& x) {
    RealVec r(eqs);
    const RealMat p = x * x.transpose() - d_a, q = x.transpose() * x - d_a_hat;
    r.head(v * v) = Eigen::Map<const RealVec>(p.data(), v * v);
    r.tail(w * w) = Eigen::Map<const RealVec>(q.data(), w * w);
    return r;
  };
  auto jacobian = [&](const RealMat& x) {
    RealMat j = RealMat::Zero(eqs, unknowns);
    for (Eigen::Index a = 0; a < v; ++a)
      for (Eigen::Index b = 0; b < w; ++b) {
        const Eigen::Index col = a + b * v;  // column-major position of x(a, b)
        RealMat e = RealMat::Zero(v, w);
        e(a, b) = 1.0;
        const RealMat dp = e * x.transpose() + x * e.transpose();
        const RealMat dq = e.transpose() * x + x.transpose() * e;
        j.block(0, col, v * v, 1) = Eigen::Map<const RealVec>(dp.data(), v * v);
        j.block(v * v, col, w * w, 1) = Eigen::Map<const RealVec>(dq.data(), w * w);
      }
    return j;
  };

  // Projected Levenberg-Marquardt from a few deterministic starts.
  const double scale = std::sqrt(std::max(d_a.maxCoeff(), d_a_hat.maxCoeff()));
  Rng rng;
  RealMat best;
  double best_norm = std::numeric_limits<double>::infinity();
  for (int start = 0; start < 16 && best_norm > 1e-12; ++start) {
    RealMat x = RealMat::Constant(v, w, std::sqrt(perron_frobenius(d_a).eigenvalue / double(v * w)));
    if (start > 0)
      for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = scale * 0.5 * (1.0 + rng.uniform());
    double mu = 1e-3;
    double f = residual(x).squaredNorm();
    for (int it = 0; it < 500 && f > 1e-26; ++it) {
      const RealVec r = residual(x);
      const RealMat j = jacobian(x);
      const RealMat jtj = j.transpose() * j;
      const RealVec g = j.transpose() * r;
      bool improved = false;
      for (int tries = 0; tries < 30; ++tries) {
        const RealMat lhs = jtj + mu * RealMat::Identity(unknowns, unknowns);
        const RealVec step = lhs.ldlt().solve(-g);
        RealMat cand = x + Eigen::Map<const RealMat>(step.data(), v, w);
        cand = cand.cwiseMax(0.0);
        const double fc = residual(cand).squaredNorm();
        if (fc < f) {
          x = cand;
          f = fc;
          mu = std::max(mu / 3.0, 1e-12);
          improved = true;
          break;
        }
        mu *= 10.0;
      }
      if (!improved) break;
    }
    if (f < best_norm) {
      best_norm = f;
      best = x;
    }
  }
  DimensionFactorization out;
  out.left = best;
  out.right = best.transpose();
  out.d_a = d_a;
  out.d_a_hat = d_a_hat;
  out.residual = residual(best).cwiseAbs().maxCoeff();
  if (out.residual > max_residual) {
    std::ostringstream os;
    os << "no nonnegative factorization within " << max_residual << " (best residual " << out.residual << ")";
    throw Error(ErrorCode::FactorizationResidualTooLarge, os.str());
  }
  return out;
}

DimensionFactorization dimension_factorization(const WeakHopfAlgebra& h, const Tolerance& tol) {
  const SectorTable a = sector_dimensions(h, tol);
  const SectorTable ah = sector_dimensions(dual_wha(h, tol), tol);
  return factorize_dimension_matrices(a.d_regular, ah.d_regular);
}

MarkovIndex markov_index(const WeakHopfAlgebra& h, const Tolerance& tol) {
  if (!h.sub.indecomposable) throw Error(ErrorCode::NotIndecomposable, "the Markov index needs an indecomposable algebra");
  MarkovIndex out;
  const SectorTable t = sector_dimensions(h, tol);
  out.delta = t.delta;
  out.delta_dual = sector_dimensions(dual_wha(h, tol), tol).delta;
  for (const MarkovTrace& m : markov_trace_components(inclusion_matrix(h.algebra(), h.sub.left, tol)))
    out.inclusion.push_back(m.index);
  if (h.sub.pure) {
    double s = 0.0;
    for (const Sector& q : t.sectors) s += q.size * q.d;
    out.sum_n_d = s;
  }
  bool agree = std::abs(out.delta - out.delta_dual) <= kSectorTol * out.delta;
  for (double x : out.inclusion) agree = agree && std::abs(out.delta - x) <= kSectorTol * out.delta;
  if (out.sum_n_d) agree = agree && std::abs(out.delta - *out.sum_n_d) <= kSectorTol * out.delta;
  if (!agree) {
    std::ostringstream os;
    os << "PF(d_A) = " << out.delta << ", PF(d_A^) = " << out.delta_dual << ", inclusion indices";
    for (double x : out.inclusion) os << " " << x;
    if (out.sum_n_d) os << ", sum n_q d_q = " << *out.sum_n_d;
    throw Error(ErrorCode::CrossCheckMismatch, os.str());
  }
  return out;
}

}  // namespace whakit
