#pragma once

#include <string>
#include <vector>

#include "whakit/wha.hpp"

namespace whakit {

/// Left action of a weak Hopf algebra A on an algebra M.
///
/// `alpha[i]` is the matrix of alpha_{e_i} on M, so alpha_{e_i}(m_j) = sum_k alpha[i](k, j) m_k.
struct WhaAction {
  WeakHopfAlgebra acting;
  FinDimAlgebra target;
  std::vector<Mat> alpha;
  std::string name;

  /// Matrix of alpha_a for a general element a of A.
  [[nodiscard]] Mat operator()(const Vec& a) const;
};

/// Residuals of "algebra-map" (alpha_1 = id, alpha_ab = alpha_a alpha_b),
/// "multiplicativity", "star" and "unit-invariance" (alpha_a(1) = alpha_{pi^L(a)}(1)).
ValidationReport validate_action(const WhaAction& act, const Tolerance& tol = {});

/// Functions on Z_n acted on by C[Z_n] through translation, alpha_g(delta_k) = delta_{k-g}.
WhaAction translation_action(int n, const Tolerance& tol = {});
/// A acting on its dual by a -> phi = phi(. a).
WhaAction dual_regular_action(const WeakHopfAlgebra& h, const Tolerance& tol = {});
/// The dual A^ acting on A by phi -> x = x_(1) phi(x_(2)); the action behind A # A^.
WhaAction dual_arrow_action(const WeakHopfAlgebra& h, const Tolerance& tol = {});
/// A acting on C through a character chi: alpha_a(1) = chi(a). chi = eps gives the
/// trivial action of a Hopf algebra.
WhaAction scalar_action(const WeakHopfAlgebra& h, const Vec& chi, std::string name = "scalar");
/// alpha_a = eps(a) id on M; a valid action only when eps is multiplicative.
WhaAction trivial_action(const WeakHopfAlgebra& h, const FinDimAlgebra& m);

/// Algebra C with the identity involution.
FinDimAlgebra scalar_algebra();
/// Functions on n points, pointwise product, complex conjugation.
FinDimAlgebra function_algebra(int n);

struct InvariantSubalgebra {
  SubspaceBasis space;   // M^A
  double distance = 0.0; // between the two constructions below
  Mat expectation;       // alpha_h as a matrix on M
};

/// M^A as the solutions of alpha_a(n) = alpha_{pi^L(a)}(n) for all a, cross-checked
/// against alpha_h(M). Throws InvariantMismatch when the two differ, NoHaar without h.
InvariantSubalgebra invariants(const WhaAction& act, const Tolerance& tol = {});

struct RightSubalgebra {
  SubspaceBasis space;  // M^R = span alpha_l(1_M), l in A^L
  bool injective = false;
};

RightSubalgebra m_r_subalgebra(const WhaAction& act, const Tolerance& tol = {});

/// M x|_{A^L} A with its *-algebra structure. Coordinates of an element of the
/// quotient are taken along `lift`, an orthonormal complement of the relations
/// inside M (x) A (index j * dim A + i for m_j (x) e_i).
struct CrossedProduct {
  FinDimAlgebra algebra;
  Mat lift;        // (dim M dim A) x dim
  Mat embed_m;     // dim x dim M, m -> m x| 1
  Mat embed_a;     // dim x dim A, a -> 1 x| a
  int relation_rank = 0;
  double descent_residual = 0.0;
  double embedding_residual = 0.0;  // multiplicativity of both embeddings
  AlgebraValidation validation;
};

/// Throws IllDefinedProduct when the product does not descend to the quotient,
/// ValidationError when the result is not an associative unital *-algebra.
CrossedProduct crossed_product(const WhaAction& act, const Tolerance& tol = {});

struct RegularityReport {
  bool right_subalgebra = false;      // M^R = A^L inside M x| A, l -> alpha_l(1) injective
  bool relative_commutant = false;    // M' meet M x| A = A^R
  bool finite_index = false;          // alpha_h has a quasi-basis
  double right_subalgebra_distance = 0.0;
  int relative_commutant_dim = 0;
  int right_dim = 0;
  double relative_commutant_distance = 0.0;
  double quasi_basis_residual = 0.0;
  [[nodiscard]] bool regular() const { return right_subalgebra && relative_commutant && finite_index; }
  [[nodiscard]] std::string failing_clauses() const;
};

RegularityReport is_regular(const WhaAction& act, const CrossedProduct& cp, const Tolerance& tol = {});
RegularityReport is_regular(const WhaAction& act, const Tolerance& tol = {});

struct ItemCheck {
  std::string name;
  double distance = 0.0;  // subspace distance, or residual for structural identities
  int lhs_dim = 0;
  int rhs_dim = 0;
  bool passed = false;
};

struct BasicConstructionReport {
  std::vector<ItemCheck> items;
  bool ok = false;
  [[nodiscard]] const ItemCheck* find(const std::string& name) const;
};

/// Checks N = M^A, M, M_2 = M x| A against the inclusion statements: the Jones-type
/// projection e = 1 x| h ("jones-projection", "conditional-expectation", "generates"),
/// "N'M = A^L", "M'M2 = A^R", "N'M2 = A", "Z(N) = Z^L", "Z(M) = A^L meet A^R", "Z(M2) = Z^R".
BasicConstructionReport verify_basic_construction(const WhaAction& act, const CrossedProduct& cp,
                                                  const Tolerance& tol = {});

struct GaloisMap {
  Mat map;  // target coordinates x source coordinates
  int source_dim = 0;  // dim M (x)_N M
  int target_dim = 0;  // dim M (x)_{A^L} A^
  int rank = 0;
  double descent_residual = 0.0;
  double module_residual = 0.0;  // l . (l' . phi) - (l l') . phi on A^
  bool bijective = false;
};

/// Canonical map m (x) m' -> (m (x) 1^) rho(m') with rho(m) = sum_i alpha_{e_i}(m) (x) e^i.
/// A^ is a left A^L-module through l . phi = phi (eps <- l). Throws IllDefinedProduct if
/// the map does not descend.
GaloisMap galois_map(const WhaAction& act, const Tolerance& tol = {});

struct SmashProduct {
  WhaAction action;  // A^ acting on A
  CrossedProduct product;
  InclusionMatrix over_a;      // A inside A # A^
  InclusionMatrix left_in_a;   // A^L inside A
  bool semisimple = false;
  bool basic_construction = false;  // over_a is the transpose of left_in_a up to block order
};

SmashProduct smash_product(const WeakHopfAlgebra& h, const Tolerance& tol = {});

/// True iff b = a with rows and columns permuted.
bool equal_up_to_permutation(const Eigen::MatrixXi& a, const Eigen::MatrixXi& b);

}  // namespace whakit
