#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "whakit/linalg.hpp"

namespace whakit {

/// Associative unital algebra over C given by structure constants in a fixed
/// basis e_0..e_{n-1}.
///
/// The structure constants are stored as left-multiplication matrices:
/// `left(i)(k, j)` is the coefficient of e_k in e_i e_j. The optional involution
/// is antilinear, a* = J conj(a), where column i of J holds the coordinates of
/// e_i*.
class FinDimAlgebra {
 public:
  FinDimAlgebra() = default;
  FinDimAlgebra(std::vector<std::string> labels, std::vector<Mat> left_mult, Vec unit,
                std::optional<Mat> involution = std::nullopt);

  /// Builds an algebra from a product rule on basis vectors.
  static FinDimAlgebra from_products(std::vector<std::string> labels,
                                     const std::function<Vec(int, int)>& product, Vec unit,
                                     std::optional<Mat> involution = std::nullopt);

  [[nodiscard]] int dim() const { return static_cast<int>(left_.size()); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const Mat& left(int i) const { return left_[i]; }
  [[nodiscard]] const Mat& right(int j) const { return right_[j]; }
  [[nodiscard]] const Vec& unit() const { return unit_; }
  [[nodiscard]] bool has_involution() const { return involution_.has_value(); }
  [[nodiscard]] const Mat& involution() const;
  [[nodiscard]] Scalar structure_constant(int i, int j, int k) const { return left_[i](k, j); }

  [[nodiscard]] Vec basis_vector(int i) const;
  [[nodiscard]] Vec multiply(const Vec& a, const Vec& b) const;
  /// Matrix of x -> a x.
  [[nodiscard]] Mat left_matrix(const Vec& a) const;
  /// Matrix of x -> x b.
  [[nodiscard]] Mat right_matrix(const Vec& b) const;
  [[nodiscard]] Vec star(const Vec& a) const;
  /// Trace of the left regular representation.
  [[nodiscard]] Scalar regular_trace(const Vec& a) const { return left_matrix(a).trace(); }

  [[nodiscard]] FinDimAlgebra with_involution(std::optional<Mat> involution) const;

 private:
  void check_vector(const Vec& v) const;

  std::vector<std::string> labels_;
  std::vector<Mat> left_;
  std::vector<Mat> right_;
  Vec unit_;
  std::optional<Mat> involution_;
};

struct AlgebraValidation {
  double associativity = 0.0;
  double unit = 0.0;
  std::optional<double> star_antimultiplicative;
  std::optional<double> star_involutive;
  std::optional<double> star_unit;
  bool ok = false;
};

AlgebraValidation validate_algebra(const FinDimAlgebra& a, const Tolerance& tol = {});

/// Algebra structure induced on the span of an orthonormal family closed under
/// multiplication (coordinates are taken with respect to the family).
FinDimAlgebra subalgebra(const FinDimAlgebra& a, const SubspaceBasis& s, const Tolerance& tol = {});

SubspaceBasis center(const FinDimAlgebra& a, const Tolerance& tol = {});
SubspaceBasis commutant_in(const SubspaceBasis& s, const FinDimAlgebra& a, const Tolerance& tol = {});
/// Smallest subspace containing s that is closed under multiplication and the unit.
SubspaceBasis generated_subalgebra(const FinDimAlgebra& a, const SubspaceBasis& s, const Tolerance& tol = {});
bool is_closed_under_product(const FinDimAlgebra& a, const SubspaceBasis& s, const Tolerance& tol = {});

/// Smallest singular value of the regular trace form (a,b) -> Tr(L_{ab}).
double trace_form_min_singular_value(const FinDimAlgebra& a);
bool is_semisimple(const FinDimAlgebra& a, const Tolerance& tol = {});

struct Block {
  Vec central_idempotent;  // z_q
  int size = 0;            // n_q with dim(z_q A) = n_q^2
  std::string label;
};

struct BlockDecomposition {
  std::vector<Block> blocks;
  [[nodiscard]] int count() const { return static_cast<int>(blocks.size()); }
};

/// Minimal central idempotents of a semisimple algebra, ordered by
/// (n_q, support of z_q, coefficients of z_q).
BlockDecomposition block_decomposition(const FinDimAlgebra& a, const Tolerance& tol = {});

/// Minimal idempotents of a commutative semisimple subalgebra given by an
/// orthonormal spanning family (used for Z^L, hypercenters, ...).
std::vector<Vec> minimal_idempotents(const FinDimAlgebra& a, const SubspaceBasis& commutative,
                                     const Tolerance& tol = {});

/// tr_q(x) = Tr_regular(z_q x) / n_q, the trace of x in the irreducible
/// representation of block q.
Scalar block_trace(const FinDimAlgebra& a, const Block& q, const Vec& x);

/// A minimal projection of block q, from the spectral decomposition of a
/// random self-adjoint element of z_q A. Requires an involution.
Vec minimal_projection(const FinDimAlgebra& a, const Block& q, const Tolerance& tol = {});

struct InclusionMatrix {
  Eigen::MatrixXi lambda;  // rows: blocks of the subalgebra, columns: blocks of the algebra
  BlockDecomposition sub_blocks;  // in ambient coordinates
  BlockDecomposition blocks;
};

InclusionMatrix inclusion_matrix(const FinDimAlgebra& a, const SubspaceBasis& sub, const Tolerance& tol = {});

struct MarkovTrace {
  double index = 0.0;
  RealVec weights;      // trace of a minimal projection per block of the algebra
  RealVec sub_weights;  // the same for the subalgebra
  std::vector<int> blocks;      // block indices of the algebra in this component
  std::vector<int> sub_blocks;  // block indices of the subalgebra in this component
};

/// Markov trace of a connected inclusion; throws NotConnected otherwise.
MarkovTrace markov_trace(const InclusionMatrix& inc);
/// One Markov trace per connected component of the Bratteli diagram.
std::vector<MarkovTrace> markov_trace_components(const InclusionMatrix& inc);

struct WatataniIndex {
  Vec element;                  // Index E = sum_i u_i v_i
  std::optional<Scalar> scalar; // present when the index lies in C1
  double quasi_basis_residual = 0.0;
  double central_residual = 0.0;  // max ||[Index, e_i]||
};

/// Index of a conditional expectation given as an n x n matrix onto its range.
WatataniIndex watatani_index(const FinDimAlgebra& a, const Mat& e, const Tolerance& tol = {});

/// Inverse of an element; nullopt when L_x is singular.
std::optional<Vec> inverse(const FinDimAlgebra& a, const Vec& x, const Tolerance& tol = {});

/// True iff x = x* and the spectrum of x is >= -tol.
bool is_positive(const FinDimAlgebra& a, const Vec& x, const Tolerance& tol = {});

/// Gram matrix G(i,j) = phi(e_i* e_j) of a functional given by its values on the basis.
Mat functional_gram(const FinDimAlgebra& a, const Vec& functional_values);

/// Functional calculus for self-adjoint elements through the GNS representation
/// of a faithful positive functional. Throws NotPositive if the functional is
/// not positive definite on A.
Vec hermitian_function_of_element(const FinDimAlgebra& a, const Vec& functional_values, const Vec& x,
                                  const std::function<double(double)>& f, const Tolerance& tol = {});

}  // namespace whakit
