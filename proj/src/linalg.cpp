#include "whakit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace whakit {

double SubspaceBasis::distance(const Vec& v) const {
  if (rank() == 0) return v.norm();
  return (v - basis * (basis.adjoint() * v)).norm();
}

bool SubspaceBasis::contains(const Vec& v, const Tolerance& tol) const {
  return tol.close(distance(v), v.norm());
}

double rank_threshold(const RealVec& singular_values, const Tolerance& tol) {
  const double top = singular_values.size() == 0 ? 0.0 : singular_values.maxCoeff();
  return tol.bound(top);
}

namespace {

int count_above(const RealVec& sv, double threshold) {
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > threshold) ++r;
  return r;
}

}  // namespace

Svd svd(const Mat& m, bool full_v) {
  const unsigned opts = Eigen::ComputeThinU | (full_v ? Eigen::ComputeFullV : Eigen::ComputeThinV);
  const Eigen::Index k = std::min(m.rows(), m.cols());
  const double scale = std::max(1.0, max_abs(m));
  auto good = [&](const Svd& d) {
    if (!d.s.allFinite() || !d.u.allFinite() || !d.v.allFinite()) return false;
    const Mat rebuilt = d.u * d.s.cast<Scalar>().asDiagonal() * d.v.leftCols(k).adjoint();
    const double tol = 1e-10 * scale * std::sqrt(double(std::max<Eigen::Index>(k, 1)));
    return max_abs(rebuilt - m) <= tol && max_abs(d.u.adjoint() * d.u - Mat::Identity(k, k)) <= 1e-10 &&
           max_abs(d.v.adjoint() * d.v - Mat::Identity(d.v.cols(), d.v.cols())) <= 1e-10;
  };
  {
    Eigen::BDCSVD<Mat> b(m, opts);
    Svd d{b.matrixU(), b.singularValues(), b.matrixV()};
    if (good(d)) return d;
  }
  Eigen::JacobiSVD<Mat> j(m, opts);
  return Svd{j.matrixU(), j.singularValues(), j.matrixV()};
}

Mat svd_solve(const Svd& d, const Mat& b, double threshold) {
  const Eigen::Index k = d.s.size();
  RealVec inv = RealVec::Zero(k);
  for (Eigen::Index i = 0; i < k; ++i)
    if (d.s(i) > threshold) inv(i) = 1.0 / d.s(i);
  return d.v.leftCols(k) * (inv.cast<Scalar>().asDiagonal() * (d.u.adjoint() * b));
}

int numerical_rank(const Mat& m, const Tolerance& tol) {
  if (m.size() == 0) return 0;
  const RealVec sv = svd(m).s;
  return count_above(sv, rank_threshold(sv, tol));
}

SubspaceBasis kernel(const Mat& m, const Tolerance& tol) {
  const Eigen::Index n = m.cols();
  if (n == 0) return SubspaceBasis(Mat(0, 0));
  if (m.rows() == 0 || max_abs(m) == 0.0) return SubspaceBasis(Mat::Identity(n, n));
  const Svd d = svd(m, true);
  const int r = count_above(d.s, rank_threshold(d.s, tol));
  Mat null = d.v.rightCols(n - r);
  return SubspaceBasis(std::move(null));
}

SubspaceBasis column_space(const Mat& m, const Tolerance& tol) {
  if (m.cols() == 0 || max_abs(m) == 0.0) return SubspaceBasis(Mat(m.rows(), 0));
  const Svd d = svd(m);
  const int r = count_above(d.s, rank_threshold(d.s, tol));
  Mat cols = d.u.leftCols(r);
  return SubspaceBasis(std::move(cols));
}

SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b, const Tolerance& tol) {
  if (a.rank() == 0 || b.rank() == 0) return SubspaceBasis(Mat(a.ambient_dim(), 0));
  Mat stacked(a.ambient_dim(), a.rank() + b.rank());
  stacked << a.basis, -b.basis;
  SubspaceBasis k = kernel(stacked, tol);
  if (k.rank() == 0) return SubspaceBasis(Mat(a.ambient_dim(), 0));
  Mat common = a.basis * k.basis.topRows(a.rank());
  return column_space(common, tol);
}

double subspace_distance(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.rank() != b.rank()) return 1.0;
  if (a.rank() == 0) return 0.0;
  Mat diff = a.projector() - b.projector();
  return svd(diff).s(0);
}

double min_singular_value(const Mat& m) {
  if (m.size() == 0) return 0.0;
  const RealVec sv = svd(m).s;
  // Wide matrices have a nontrivial kernel regardless of the computed values.
  if (m.rows() < m.cols()) return 0.0;
  return sv.minCoeff();
}

LeastSquares solve_least_squares(const Mat& m, const Vec& b) {
  LeastSquares out;
  if (m.cols() == 0) {
    out.solution = Vec(0);
    out.residual = max_abs(b);
    return out;
  }
  const Svd d = svd(m);
  out.solution = svd_solve(d, b, 1e-11 * d.s(0));
  out.residual = max_abs(m * out.solution - b);
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != Scalar(0)) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void normalize_column_phases(Mat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double top = m.col(j).cwiseAbs().maxCoeff();
    if (top == 0.0) continue;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double a = std::abs(m(i, j));
      if (a >= (1.0 - 1e-8) * top) {
        m.col(j) *= std::conj(m(i, j)) / a;
        break;
      }
    }
  }
}

PerronFrobenius perron_frobenius(const RealMat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "Perron-Frobenius needs a square matrix");
  if (m.size() == 0) throw Error(ErrorCode::DimensionMismatch, "Perron-Frobenius of an empty matrix");
  if (m.minCoeff() < -1e-12) throw Error(ErrorCode::NotNonnegative, "matrix has a negative entry");
  const Eigen::Index n = m.rows();
  RealMat a = m.cwiseMax(0.0);

  Eigen::EigenSolver<RealMat> es(a);
  const Eigen::VectorXcd ev = es.eigenvalues();
  double rho = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) rho = std::max(rho, std::abs(ev(i)));

  PerronFrobenius out;
  out.eigenvalue = rho;
  // Power iteration on the aperiodic shift I + a / rho always converges to a
  // nonnegative eigenvector for the spectral radius.
  RealVec v = RealVec::Ones(n) / static_cast<double>(n);
  if (rho > 0.0) {
    RealMat shifted = RealMat::Identity(n, n) + a / rho;
    for (int it = 0; it < 20000; ++it) {
      RealVec next = shifted * v;
      next /= next.sum();
      const double change = (next - v).cwiseAbs().maxCoeff();
      v = next;
      if (change < 1e-15) break;
    }
    // Polish with the eigen-solver vector when it is sign-definite.
    Eigen::Index best = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::abs(ev(i).real() - rho) + std::abs(ev(i).imag()) <
          std::abs(ev(best).real() - rho) + std::abs(ev(best).imag()))
        best = i;
    RealVec w = es.eigenvectors().col(best).real();
    if (w.sum() < 0) w = -w;
    if (w.minCoeff() >= -1e-12 && w.sum() > 0) {
      w = w.cwiseMax(0.0) / w.cwiseMax(0.0).sum();
      if ((a * w - rho * w).cwiseAbs().maxCoeff() <= (a * v - rho * v).cwiseAbs().maxCoeff()) v = w;
    }
  }
  out.eigenvector = v;
  return out;
}

bool is_irreducible(const RealMat& m) {
  const Eigen::Index n = m.rows();
  if (n <= 1) return true;
  auto reach_all = [&](bool transpose) {
    std::vector<bool> seen(n, false);
    std::queue<Eigen::Index> todo;
    todo.push(0);
    seen[0] = true;
    while (!todo.empty()) {
      const Eigen::Index i = todo.front();
      todo.pop();
      for (Eigen::Index j = 0; j < n; ++j) {
        const double w = transpose ? m(j, i) : m(i, j);
        if (w > 1e-12 && !seen[j]) {
          seen[j] = true;
          todo.push(j);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  return reach_all(false) && reach_all(true);
}

std::vector<std::vector<int>> connected_components(const RealMat& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::vector<int> comp;
    std::queue<int> todo;
    todo.push(s);
    label[s] = static_cast<int>(out.size());
    while (!todo.empty()) {
      const int i = todo.front();
      todo.pop();
      comp.push_back(i);
      for (int j = 0; j < n; ++j) {
        if ((m(i, j) > 1e-12 || m(j, i) > 1e-12) && label[j] < 0) {
          label[j] = label[s];
          todo.push(j);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

Vec Rng::complex_vector(Eigen::Index n) {
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = uniform();
    const double im = uniform();
    v(i) = Scalar(re, im);
  }
  return v;
}

RealVec Rng::real_vector(Eigen::Index n) {
  RealVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform();
  return v;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSemisimple: return "NotSemisimple";
    case ErrorCode::NonIntegerBlockSize: return "NonIntegerBlockSize";
    case ErrorCode::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::NoQuasiBasis: return "NoQuasiBasis";
    case ErrorCode::NotConditionalExpectation: return "NotConditionalExpectation";
    case ErrorCode::NotNonnegative: return "NotNonnegative";
    case ErrorCode::NoInvolution: return "NoInvolution";
    case ErrorCode::NoHaar: return "NoHaar";
    case ErrorCode::NotSeparable: return "NotSeparable";
    case ErrorCode::NoAntipode: return "NoAntipode";
    case ErrorCode::NonUnique: return "NonUnique";
    case ErrorCode::InconsistentMaschke: return "InconsistentMaschke";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::InconsistentCriterion: return "InconsistentCriterion";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NonScalarIndex: return "NonScalarIndex";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::MultiplicityNotInteger: return "MultiplicityNotInteger";
    case ErrorCode::VacuumAssignmentFailed: return "VacuumAssignmentFailed";
    case ErrorCode::NotProportionalToMinimal: return "NotProportionalToMinimal";
    case ErrorCode::ZeroIntertwiner: return "ZeroIntertwiner";
    case ErrorCode::FactorizationResidualTooLarge: return "FactorizationResidualTooLarge";
    case ErrorCode::CrossCheckMismatch: return "CrossCheckMismatch";
    case ErrorCode::InvariantMismatch: return "InvariantMismatch";
    case ErrorCode::IllDefinedProduct: return "IllDefinedProduct";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::InvalidGroupoid: return "InvalidGroupoid";
    case ErrorCode::NotIndecomposable: return "NotIndecomposable";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::MissingFile: return "MissingFile";
  }
  return "Unknown";
}

}  // namespace whakit
