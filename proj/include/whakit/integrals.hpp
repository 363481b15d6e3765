#pragma once

#include <optional>
#include <vector>

#include "whakit/wha.hpp"

namespace whakit {

enum class Side { Left, Right };

struct IntegralSpace {
  Side side = Side::Left;
  SubspaceBasis space;
  double residual = 0.0;  // max over basis x and spanning i of the defining identity
};

/// Left integrals: x i = pi^L(x) i; right integrals: i x = i pi^R(x).
IntegralSpace integral_space(const WeakHopfAlgebra& h, Side side, const Tolerance& tol = {});

/// A left integral with pi^L(i) = 1, if one exists.
std::optional<Vec> normalized_left_integral(const WeakHopfAlgebra& h, const Tolerance& tol = {});

struct MaschkeReport {
  bool semisimple = false;
  bool normalized_integral_exists = false;
  bool separable = false;  // implied by the theorem, equal to `semisimple`
};

/// Throws InconsistentMaschke if semisimplicity and normalized-integral existence disagree.
MaschkeReport maschke_check(const WeakHopfAlgebra& h, const Tolerance& tol = {});

struct HaarIntegral {
  Vec h;
  bool unique = false;
  double idempotent_residual = 0.0;
  double antipode_residual = 0.0;
  std::optional<double> star_residual;
};

/// The normalized two-sided integral; nullopt when none exists. Throws NotIdempotent
/// if a solution exists but fails h^2 = h.
std::optional<HaarIntegral> haar_integral(const WeakHopfAlgebra& h, const Tolerance& tol = {});

struct HaarCriterion {
  bool semisimple = false;
  bool implementer_exists = false;  // invertible g with g x g^-1 = S^2(x)
  std::optional<Vec> implementer;
  std::optional<bool> traces_nonzero;  // tr_q(g^-1) != 0 in every block
  bool criterion = false;
  bool haar_exists = false;
};

/// Existence criterion for the Haar integral, checked against haar_integral.
/// Throws InconsistentCriterion if the two disagree.
HaarCriterion haar_criterion(const WeakHopfAlgebra& h, const Tolerance& tol = {});

struct ConditionalExpectations {
  Mat left;   // E^L(x) = h^ -> x
  Mat right;  // E^R(x) = x <- h^
  double idempotent_residual = 0.0;
  double range_residual = 0.0;     // distance of the ranges from A^L, A^R
  double bimodule_residual = 0.0;  // E^L(l x l') = l E^L(x) l' and the A^R analogue
  double unit_residual = 0.0;      // E(1) = 1
};

ConditionalExpectations haar_conditional_expectations(const WeakHopfAlgebra& h, const Vec& dual_haar,
                                                      const Tolerance& tol = {});

struct CanonicalGrouplike {
  Vec g_left, g_right, g;
  double implements_s2_residual = 0.0;     // g x g^-1 - S^2(x)
  double trace_balance_residual = 0.0;     // tr_q(g) - tr_q(g^-1)
  bool positive = false;
  std::vector<double> block_traces;        // tr_q(g) per block of A
  std::vector<double> block_inverse_traces;
};

/// g_L = (h^ -> h)^(1/2), g_R = (h <- h^)^(1/2), g = g_L g_R^-1, with square roots taken
/// in the GNS representation of the Haar functional. Throws NotPositive.
CanonicalGrouplike canonical_grouplike(const WeakHopfAlgebra& h, const Vec& haar, const Vec& dual_haar,
                                       const Tolerance& tol = {});

struct ModularReport {
  double modular_residual = 0.0;    // <h^, ab> - <h^, b k a k^-1>, k = g_L g_R
  double trace_residual = 0.0;      // <h^, ab> - <h^, ba>
  bool tracial = false;
  bool weak_kac = false;
  bool consistent = false;          // tracial iff weak Kac
};

ModularReport haar_modular_check(const WeakHopfAlgebra& h, const Vec& dual_haar, const Vec& g_left,
                                 const Vec& g_right, const Tolerance& tol = {});

struct HaarIndex {
  std::optional<double> value;  // common scalar index of E^L and E^R
  Vec left_element, right_element;
  double left_right_gap = 0.0;
  std::vector<double> component_values;  // per minimal projection of Z^L meet Z^R
};

/// Watatani index of E^L and E^R. Throws NonScalarIndex for an indecomposable
/// algebra whose index is not a scalar.
HaarIndex haar_index(const WeakHopfAlgebra& h, const ConditionalExpectations& e, const Tolerance& tol = {});

/// G[phi, psi] = <phi* psi, h> on the dual basis. Throws NotPositiveDefinite.
Mat haar_inner_product(const WeakHopfAlgebra& h, const Vec& haar, const Tolerance& tol = {});

struct HaarData {
  Vec h, h_hat;
  ConditionalExpectations expectations;
  CanonicalGrouplike grouplike;
  ModularReport modular;
  HaarIndex index;
};

/// The whole integral pipeline for a C*-weak Hopf algebra. Throws NoHaar,
/// NoInvolution, NotPositive as appropriate.
HaarData haar_data(const WeakHopfAlgebra& h, const Tolerance& tol = {});

}  // namespace whakit
