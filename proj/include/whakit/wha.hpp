#pragma once

#include <optional>
#include <string>
#include <vector>

#include "whakit/algebra.hpp"

namespace whakit {

/// Finite-dimensional weak bialgebra: an algebra with comultiplication and counit.
///
/// Elements of A (x) A are n x n matrices X with X = sum_ij X(i,j) e_i (x) e_j.
/// The comultiplication is stored as an n^2 x n matrix in the Kronecker basis
/// (row i*n + j), and also as the per-basis matrices coproduct(k) = Delta(e_k).
class WeakBialgebra {
 public:
  WeakBialgebra() = default;
  WeakBialgebra(FinDimAlgebra algebra, Mat comultiplication, Vec counit);

  [[nodiscard]] int dim() const { return algebra_.dim(); }
  [[nodiscard]] const FinDimAlgebra& algebra() const { return algebra_; }
  [[nodiscard]] const Mat& comultiplication() const { return delta_; }
  [[nodiscard]] const Vec& counit() const { return counit_; }
  [[nodiscard]] const Mat& coproduct(int k) const { return coproducts_[k]; }
  [[nodiscard]] Mat coproduct_of(const Vec& a) const;
  [[nodiscard]] Scalar counit_of(const Vec& a) const { return counit_.transpose() * a; }
  /// Delta(1) as an n x n matrix.
  [[nodiscard]] Mat coproduct_of_unit() const { return coproduct_of(algebra_.unit()); }
  /// F(a,b) = eps(e_a e_b).
  [[nodiscard]] const Mat& counit_form() const { return form_; }
  /// Product in A (x) A.
  [[nodiscard]] Mat tensor_multiply(const Mat& x, const Mat& y) const;

 private:
  FinDimAlgebra algebra_;
  Mat delta_;
  Vec counit_;
  std::vector<Mat> coproducts_;
  Mat form_;
};

struct AxiomResidual {
  std::string name;
  double residual = 0.0;
  double scale = 1.0;
  bool passed = false;
};

struct ValidationReport {
  std::vector<AxiomResidual> axioms;
  bool ok = false;
  [[nodiscard]] const AxiomResidual* find(const std::string& name) const;
};

/// Checks coassociativity, counit, comultiplicativity (Delta(ab) = Delta(a)Delta(b)),
/// weak-unit ((Delta(1) (x) 1)(1 (x) Delta(1)) = Delta^2(1) = (1 (x) Delta(1))(Delta(1) (x) 1))
/// and weak-counit (eps(a b_(1)) eps(b_(2) c) = eps(abc) = eps(a b_(2)) eps(b_(1) c)).
ValidationReport validate_wba(const WeakBialgebra& w, const Tolerance& tol = {});

struct CounitalMaps {
  Mat left;   // pi^L(a) = eps(1_(1) a) 1_(2)
  Mat right;  // pi^R(a) = 1_(1) eps(a 1_(2))
};

CounitalMaps counital_maps(const WeakBialgebra& w);

struct CounitalSubalgebras {
  SubspaceBasis left, right;        // A^L, A^R
  SubspaceBasis left_center, right_center;  // Z^L, Z^R
  SubspaceBasis hypercenter;        // Z^L meet Z^R
  bool pure = false;                // Z^L = C1
  bool indecomposable = false;      // Z^L meet Z^R = C1
  double left_definition_distance = 0.0;   // image(pi^L) vs {a : Delta(a) = (a(x)1)Delta(1) = Delta(1)(a(x)1)}
  double right_definition_distance = 0.0;
};

CounitalSubalgebras counital_subalgebras(const WeakBialgebra& w, const Tolerance& tol = {});

struct AntipodeSolution {
  Mat antipode;
  double residual = 0.0;           // of the stacked linear system
  double uniqueness_margin = 0.0;  // smallest singular value of the stacked system
  double third_axiom_residual = 0.0;  // S(a_(1)) a_(2) S(a_(3)) - S(a)
};

/// Solves a_(1)S(a_(2)) = pi^L(a), S(a_(1))a_(2) = pi^R(a) and the linearized
/// third axiom pi^R(a_(1))S(a_(2)) = S(a) as one linear system in S.
AntipodeSolution solve_antipode(const WeakBialgebra& w, const Tolerance& tol = {});

/// Residuals of the three antipode axioms for a given S.
struct AntipodeCheck {
  double left_axiom = 0.0;
  double right_axiom = 0.0;
  double third_axiom = 0.0;
  double antimultiplicative = 0.0;
  double unit = 0.0;
  bool invertible = false;
  double counital_exchange = 0.0;  // distance between S(A^L) and A^R
  bool ok = false;
};

AntipodeCheck check_antipode(const WeakBialgebra& w, const Mat& s, const Tolerance& tol = {});

/// Weak Hopf algebra with its derived counital data.
struct WeakHopfAlgebra {
  WeakBialgebra wba;
  Mat antipode;
  CounitalMaps pi;
  CounitalSubalgebras sub;

  [[nodiscard]] int dim() const { return wba.dim(); }
  [[nodiscard]] const FinDimAlgebra& algebra() const { return wba.algebra(); }
  [[nodiscard]] Vec apply_antipode(const Vec& a) const { return antipode * a; }
};

/// Validates the weak bialgebra, solves for S (unless given) and derives pi, A^L, A^R, Z^L, Z^R.
/// Throws ValidationError when an axiom fails, NoAntipode/NonUnique from the solver.
WeakHopfAlgebra make_wha(const WeakBialgebra& w, const Tolerance& tol = {},
                         const std::optional<Mat>& antipode = std::nullopt);

/// Dual weak bialgebra on the dual basis: multiplication and comultiplication are transposed.
WeakBialgebra dual_wba(const WeakBialgebra& w);
/// Dual weak Hopf algebra; S^ = S^T and, for *-structures, phi*(x) = conj(phi(S(x)*)).
WeakHopfAlgebra dual_wha(const WeakHopfAlgebra& h, const Tolerance& tol = {});

/// Sweedler arrows. Functionals are coordinate vectors phi_k = phi(e_k).
///   (a -> phi)(x) = phi(x a),   (phi <- a)(x) = phi(a x),
///   phi -> x = x_(1) phi(x_(2)), x <- phi = phi(x_(1)) x_(2).
Vec hit_functional_left(const WeakBialgebra& w, const Vec& a, const Vec& phi);
Vec hit_functional_right(const WeakBialgebra& w, const Vec& phi, const Vec& a);
Vec hit_element_left(const WeakBialgebra& w, const Vec& phi, const Vec& x);
Vec hit_element_right(const WeakBialgebra& w, const Vec& x, const Vec& phi);

/// The four arrows as rank-3 arrays: entry k is the matrix of the action of the k-th basis vector.
struct SweedlerArrows {
  std::vector<Mat> on_dual_left;    // phi -> e_k -> phi
  std::vector<Mat> on_dual_right;   // phi -> phi <- e_k
  std::vector<Mat> on_algebra_left;   // x -> e^k -> x
  std::vector<Mat> on_algebra_right;  // x -> x <- e^k
  double module_residual = 0.0;  // (ab) -> phi = a -> (b -> phi) and its three siblings
};

SweedlerArrows sweedler_arrows(const WeakBialgebra& w);

struct StarReport {
  double comultiplication = 0.0;  // Delta(a*) = Delta(a)^{* (x) *}
  double counit = 0.0;            // eps(a*) = conj(eps(a))
  double antipode = 0.0;          // S(S(a)*)* = a
  double algebra = 0.0;           // (ab)* = b*a*, (a*)* = a, 1* = 1
  /// Smallest eigenvalue of (a,b) -> Tr(L_{a*b}) relative to the largest; positive iff A is a C*-algebra.
  double positivity_margin = 0.0;
  bool c_star = false;
  bool ok = false;  // all identities hold and A is a C*-algebra
};

StarReport validate_star(const WeakHopfAlgebra& h, const Tolerance& tol = {});

double weak_kac_defect(const WeakHopfAlgebra& h);  // max |S^2 - id|
bool is_weak_kac(const WeakHopfAlgebra& h, const Tolerance& tol = {});

struct SeparabilityStructure {
  std::vector<std::pair<Vec, Vec>> pairs;  // Delta(1) = sum_i first_i (x) second_i
  bool first_leg_in_right = false;   // first legs in A^R
  bool second_leg_in_left = false;   // second legs in A^L
  bool first_leg_in_left = false;
  bool second_leg_in_right = false;
  /// Separability element of A^L: sum_i S(first_i) (x) second_i, n x n matrix.
  Mat idempotent;
  double multiplication_residual = 0.0;  // m(idempotent) - 1
  double bimodule_residual = 0.0;        // l.idempotent - idempotent.l on A^L
  double split_residual = 0.0;           // m(delta(l)) - l on A^L
  double counit_residual = 0.0;          // (psi (x) id) delta(l) - l with psi = eps on A^L
};

/// Factorizes Delta(1) into legs and verifies the induced separable Frobenius
/// structure on A^L. Throws NotSeparable if the legs do not lie in the counital subalgebras.
SeparabilityStructure separability_structure(const WeakHopfAlgebra& h, const Tolerance& tol = {});

/// Minimal projections of the hypercenter Z^L meet Z^R.
std::vector<Vec> hypercentral_projections(const WeakHopfAlgebra& h, const Tolerance& tol = {});

/// The weak Hopf algebra c A for a central projection c in Z^L meet Z^R, in an
/// orthonormal basis of c A (columns of `embedding`).
struct WhaComponent {
  WeakHopfAlgebra wha;
  Mat embedding;  // n x dim(cA)
};

WhaComponent restrict_to_component(const WeakHopfAlgebra& h, const Vec& c, const Tolerance& tol = {});

}  // namespace whakit
