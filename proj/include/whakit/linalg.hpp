#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "whakit/types.hpp"

// Dense numerical kernel shared by all modules: kernels and ranges of linear
// maps, subspace arithmetic, least squares, Hermitian functional calculus and
// Perron-Frobenius data.
namespace whakit {

/// Orthonormal spanning vectors (columns) of a subspace of C^n.
struct SubspaceBasis {
  Mat basis;

  SubspaceBasis() = default;
  explicit SubspaceBasis(Mat columns) : basis(std::move(columns)) {}

  [[nodiscard]] int ambient_dim() const { return static_cast<int>(basis.rows()); }
  [[nodiscard]] int rank() const { return static_cast<int>(basis.cols()); }
  [[nodiscard]] Mat projector() const { return basis * basis.adjoint(); }
  /// Distance of v from the subspace (2-norm of the orthogonal component).
  [[nodiscard]] double distance(const Vec& v) const;
  [[nodiscard]] bool contains(const Vec& v, const Tolerance& tol) const;
};

/// m = u diag(s) v^H with u thin. Eigen 3.4's divide-and-conquer solver is tried
/// first and its factorization checked; on failure (it can break down on highly
/// degenerate spectra) the one-sided Jacobi solver is used instead.
struct Svd {
  Mat u;
  RealVec s;
  Mat v;  // full when requested, thin otherwise
};

Svd svd(const Mat& m, bool full_v = false);

/// Minimum-norm solution of m x = b, discarding singular values <= threshold.
Mat svd_solve(const Svd& d, const Mat& b, double threshold);

/// Singular value threshold used for every rank decision.
double rank_threshold(const RealVec& singular_values, const Tolerance& tol);

int numerical_rank(const Mat& m, const Tolerance& tol);

/// Orthonormal basis of {x : m x = 0}.
SubspaceBasis kernel(const Mat& m, const Tolerance& tol);

/// Orthonormal basis of the column space of m.
SubspaceBasis column_space(const Mat& m, const Tolerance& tol);

SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b, const Tolerance& tol);

/// Spectral-norm distance between orthogonal projectors; 1 when ranks differ.
double subspace_distance(const SubspaceBasis& a, const SubspaceBasis& b);

/// Smallest singular value (0 for an empty matrix).
double min_singular_value(const Mat& m);

struct LeastSquares {
  Vec solution;
  double residual = 0.0;  // max-abs entry of m x - b
};

/// Minimum-norm least-squares solution of m x = b.
LeastSquares solve_least_squares(const Mat& m, const Vec& b);

/// Applies a real function to a Hermitian matrix through its eigendecomposition.
template <typename F>
Mat hermitian_function(const Mat& h, F&& f) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
  RealVec w = es.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = f(w(i));
  return es.eigenvectors() * w.cast<Scalar>().asDiagonal() * es.eigenvectors().adjoint();
}

/// Kronecker product; (a (x) b)(i*rb + k, j*cb + l) = a(i, j) b(k, l).
Mat kron(const Mat& a, const Mat& b);

/// Phase convention for basis vectors: the first entry whose modulus is within
/// a relative 1e-8 of the column maximum is made real and positive.
void normalize_column_phases(Mat& m);

struct PerronFrobenius {
  double eigenvalue = 0.0;
  RealVec eigenvector;  // nonnegative, unit 1-norm
};

PerronFrobenius perron_frobenius(const RealMat& m);

/// Irreducibility of a nonnegative square matrix (strong connectivity of its
/// support graph).
bool is_irreducible(const RealMat& m);

/// Connected components of the support graph of a symmetric nonnegative matrix.
std::vector<std::vector<int>> connected_components(const RealMat& m);

/// Deterministic generator for the library's randomized-but-reproducible steps.
/// The default seed spells "WHA1" in ASCII.
class Rng {
 public:
  static constexpr std::uint64_t kDefaultSeed = 0x57484131;
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}
  double uniform() { return dist_(engine_); }  // in [-1, 1)
  Vec complex_vector(Eigen::Index n);
  RealVec real_vector(Eigen::Index n);
  std::uint64_t index(std::uint64_t bound) { return engine_() % bound; }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> dist_{-1.0, 1.0};
};

/// Max-abs entry; 0 for empty objects.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace whakit
