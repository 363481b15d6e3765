#pragma once

#include <optional>
#include <vector>

#include "whakit/integrals.hpp"

// Finite-dimensional representations of a C*-weak Hopf algebra: the monoidal
// structure (Delta(1)-compressed tensor products, the GNS representation of the
// counit as unit, antipode conjugates) and the sector dimensions built on it.
namespace whakit {

/// D(e_i) for every basis element; `unitary` records D(a*) = D(a)^H.
struct Representation {
  std::vector<Mat> matrices;
  bool unitary = false;

  [[nodiscard]] int carrier_dim() const { return matrices.empty() ? 0 : static_cast<int>(matrices[0].rows()); }
  [[nodiscard]] Mat operator()(const Vec& a) const;
};

/// Max of |D(e_i)D(e_j) - sum_k c_ij^k D(e_k)| and |D(1) - 1|.
double representation_residual(const FinDimAlgebra& a, const Representation& d);
bool preserves_star(const FinDimAlgebra& a, const Representation& d, const Tolerance& tol = {});
Representation direct_sum(const Representation& x, const Representation& y);

/// Left multiplication matrices.
Representation regular_representation(const FinDimAlgebra& a);

struct GnsRepresentation {
  Representation rep;
  Mat embedding;      // columns: an orthonormal basis of A / N as coordinate vectors in A
  Vec cyclic_vector;  // class of 1 in that basis
};

/// GNS representation of the functional phi (phi_k = phi(e_k)). Throws NotPositive.
GnsRepresentation gns_representation(const FinDimAlgebra& a, const Vec& phi, const Tolerance& tol = {});
/// D_eps, the monoidal unit.
GnsRepresentation gns_counit_rep(const WeakHopfAlgebra& h, const Tolerance& tol = {});

/// One irreducible *-representation per block, in block_decomposition order, realized
/// on the left ideal A p of a minimal projection p. Throws NoInvolution.
std::vector<Representation> irreducible_representations(const FinDimAlgebra& a, const Tolerance& tol = {});

/// (D1 (x) D2)(Delta(a)) on the uncompressed carrier H1 (x) H2.
Mat raw_tensor(const WeakBialgebra& w, const Representation& d1, const Representation& d2, const Vec& a);

struct TensorProduct {
  Representation rep;
  Mat isometry;    // orthonormal basis of the range of projection, phases normalized
  Mat projection;  // (D1 (x) D2)(Delta(1))
};

TensorProduct monoidal_product(const WeakHopfAlgebra& h, const Representation& d1, const Representation& d2,
                               const Tolerance& tol = {});

/// conj(D(S(a)*)). For a *-representation the result is made unitary by the
/// similarity conj(D(g))^(1/2), g the canonical grouplike.
Representation conjugate_rep(const WeakHopfAlgebra& h, const Representation& d, const Vec& g,
                             const Tolerance& tol = {});
Representation conjugate_rep(const WeakHopfAlgebra& h, const Representation& d, const Tolerance& tol = {});

struct IntertwinerSpace {
  int rows = 0, cols = 0;
  std::vector<Mat> basis;  // Frobenius-orthonormal
  [[nodiscard]] int dim() const { return static_cast<int>(basis.size()); }
};

/// All T with T D1(a) = D2(a) T.
IntertwinerSpace intertwiner_space(const Representation& from, const Representation& to, const Tolerance& tol = {});

/// N_q(D) = rank D(z_q) / n_q. Throws MultiplicityNotInteger.
std::vector<int> block_multiplicities(const BlockDecomposition& blocks, const Representation& d);

struct Vacuum {
  Vec projection;  // minimal projection z^L_mu of Z^L
  double weight = 0.0;  // k(mu) = eps(z^L_mu)
  int block = -1;  // the irreducible summand of D_eps it cuts out
};

/// Vacua, ordered by block. Throws MultiplicityNotInteger.
std::vector<Vacuum> vacua(const WeakHopfAlgebra& h, const GnsRepresentation& d_eps, const BlockDecomposition& blocks,
                          const Tolerance& tol = {});

/// Data shared by the sector computations.
struct RepContext {
  WeakHopfAlgebra h;
  BlockDecomposition blocks;
  std::vector<Representation> irreps;
  GnsRepresentation d_eps;
  std::vector<Vacuum> vacua;
  Vec g;  // canonical grouplike
};

RepContext rep_context(const WeakHopfAlgebra& h, const Tolerance& tol = {});

struct StandardSolution {
  Mat r;      // D_eps -> conj(q) (x) q, on the uncompressed carrier
  Mat r_bar;  // D_eps -> q (x) conj(q)
  double d = 0.0;
  int left_vacuum = -1;   // from r_bar
  int right_vacuum = -1;  // from r
  double proportionality_residual = 0.0;
  double zigzag_residual = 0.0;
};

/// Balanced solutions of the conjugate equations for block q:
/// R*R = d D_eps(z^L_mu), Rbar*Rbar = d D_eps(z^L_nu) and
/// (Rbar* (x) 1)(1 (x) R) = 1 through the unit isomorphisms.
/// Throws ZeroIntertwiner, NotProportionalToMinimal.
StandardSolution standard_solution(const RepContext& ctx, int q, const Tolerance& tol = {});

struct Sector {
  int block = -1;
  int size = 0;
  double d = 0.0;           // trace formula
  double d_standard = 0.0;  // standard solutions
  int left_vacuum = -1;
  int right_vacuum = -1;
};

struct SectorTable {
  std::vector<Sector> sectors;
  std::vector<Vacuum> vacua;
  RealMat d_regular;  // d_A
  double delta = 0.0;  // PF(d_A)
};

/// d_q = k(q^L)^(-1/2) k(q^R)^(-1/2) tr_q g. Throws VacuumAssignmentFailed if the
/// standard solutions cannot assign vacua, CrossCheckMismatch if the two routes disagree.
SectorTable sector_dimensions(const RepContext& ctx, const Tolerance& tol = {});
SectorTable sector_dimensions(const WeakHopfAlgebra& h, const Tolerance& tol = {});

/// d_D = sum_q N_q(D) d_q e_{q^L q^R}.
RealMat dimension_matrix(const SectorTable& t, const std::vector<int>& multiplicities);

struct DimensionFactorization {
  RealMat left;   // d^L, vacua of A x vacua of the dual
  RealMat right;  // d^R = (d^L)^T
  RealMat d_a, d_a_hat;
  double residual = 0.0;
};

/// Nonnegative d^L with d^L (d^L)^T = d_A and (d^L)^T d^L = d_A^. Throws FactorizationResidualTooLarge.
DimensionFactorization factorize_dimension_matrices(const RealMat& d_a, const RealMat& d_a_hat, double max_residual = 1e-6);
DimensionFactorization dimension_factorization(const WeakHopfAlgebra& h, const Tolerance& tol = {});

struct MarkovIndex {
  double delta = 0.0;       // PF(d_A)
  double delta_dual = 0.0;  // PF(d_A^)
  std::vector<double> inclusion;  // Markov index of each z^L_nu A^L in z^L_nu A
  std::optional<double> sum_n_d;  // sum_q n_q d_q (pure case)
};

/// Throws NotIndecomposable, CrossCheckMismatch (with all values) beyond 1e-6.
MarkovIndex markov_index(const WeakHopfAlgebra& h, const Tolerance& tol = {});

}  // namespace whakit
