#pragma once

// Kenmotsu-type hypersurfaces of Hermitian manifolds.
//
// The ambient manifold has complex dimension n; Latin indices a,b,c run over
// 1..n-1 (stored 0-based, extent n-1) and the distinguished index n is kept in
// separate arrays. Lower arrays share the index order of their upper partner.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agcurv/tensor.hpp"

namespace agcurv {

struct HypersurfaceData {
  int n = 0;  // ambient complex dimension, n >= 2

  DenseArray Bab_c;  // (a,b,c): B^{ab}_c
  DenseArray Ban_b;  // (a,b): B^{an}_b
  DenseArray Bna_b;  // (a,b): B^{na}_b
  DenseArray Bab_n;  // (a,b): B^{ab}_n
  DenseArray Bn_nb;  // (b): B^n_{nb}

  DenseArray lower_Bab_c;  // B_{ab}^c
  DenseArray lower_Ban_b;  // B_{an}^b
  DenseArray lower_Bna_b;  // B_{na}^b
  DenseArray lower_Bab_n;  // B_{ab}^n
  DenseArray lower_Bn_nb;  // B_n^{nb}

  /// Kirichenko tensor of the hypersurface (a,b,c): B^{ab}_c and its lower
  /// partner. When absent the ambient B^{ab}_c is used.
  std::optional<DenseArray> kenmotsu_B;
  std::optional<DenseArray> kenmotsu_B_lower;
};

/// Every array zero, lower family included.
HypersurfaceData zero_hypersurface(int n);

/// Sets the lower family to the conjugate of the upper family.
void conjugate_lower(HypersurfaceData& h);

/// Throws TensorError naming the first mis-shaped array ("hypersurface.Ban_b").
void check_shapes(const HypersurfaceData& h);

/// Random ambient data for which the matching system holds: B^{an}_b =
/// -delta/sqrt2 + anti-Hermitian, B^{na}_b solved from B_{nb}^a, B^{ab}_n = 0,
/// B^n_{nb} = 0.
HypersurfaceData consistent_hypersurface(int n, std::uint64_t seed, double scale = 1.0);

struct SecondForm {
  DenseArray sigma_ab;     // (a,b): sigma_{ab}
  DenseArray sigma_nb;     // (b): sigma_{nb}
  DenseArray sigma_up;     // (a,b): sigma^{ab}
  DenseArray sigma_mixed;  // (a,b): sigma^a_b
  DenseArray sigma_lower_mixed;  // (a,b): sigma_a^b
  DenseArray sigma_n_b;    // (b): sigma_n^b
};

struct CartanTerm {
  std::string form;         // "domega^a", "domega_a" or "domega"
  std::string wedge;        // e.g. "omega^b ^ omega"
  std::string coefficient;  // symbolic coefficient
  bool negated = false;     // the term enters with an overall minus sign
  DenseArray value;         // numeric coefficient, sign included
};

struct CartanTable {
  std::string kind;
  std::vector<CartanTerm> terms;
};

/// Coefficient tables of the first Cartan structure equations. `sigma` is only
/// read for the Hermitian table.
CartanTable cartan_hermitian(const HypersurfaceData& h, const SecondForm& sigma);
CartanTable cartan_kenmotsu(const HypersurfaceData& h);

struct Equation {
  std::string text;
  double residual = 0.0;
};

/// One equation per 2-form term whose coefficients differ symbolically.
std::vector<Equation> equate(const CartanTable& lhs, const CartanTable& rhs);

/// The matching system in the order produced by equate(hermitian, kenmotsu).
const std::vector<std::string>& matching_system();

struct SigmaReport {
  SecondForm sigma;
  std::vector<Equation> relations;  // the nine matching equations
  double sigma_symmetry = 0.0;
  double ambient_antisymmetry = 0.0;
  double tolerance = kDefaultTolerance;
  bool consistent() const;
};

/// sigma_{ab} = 0, sigma_{nb} = 0, sigma^a_b = i (sqrt2 B^{an}_b + delta^a_b),
/// sigma^{ab} = B^{ab}_n / (i sqrt2), lower family by conjugation; then the
/// residual of every matching relation.
SigmaReport extract_sigma(const HypersurfaceData& h, double tol = kDefaultTolerance);

struct FrameChange {
  DenseArray Cmat;  // (i,j): C^i_j
  DenseArray Cinv;  // (i,j): C~^i_j
  double condition = 1.0;

  /// Computes the inverse; throws TensorError when C is singular.
  static FrameChange from_matrix(const DenseArray& C);
  /// Validates C Cinv = 1 to `tol`.
  static FrameChange from_pair(const DenseArray& C, const DenseArray& Cinv, double tol = 1e-12);
  static FrameChange identity(int dim);

  FrameChange inverse() const;
  /// Transport under this change followed by `next`.
  FrameChange then(const FrameChange& next) const;
};

/// R^i_{jkl} = C~^i_q R~^q_{rst} C^r_j C^s_k C^t_l.
DenseArray transform_curvature(const DenseArray& Rtilde, const FrameChange& F);

struct ProductStructureCheck {
  double j_squared = 0.0;      // max |J^2 U + U|
  double compatibility = 0.0;  // max |h(JU, JV) - h(U, V)|
  std::size_t samples = 0;
};

/// J(X, f d/dt) = (Phi X - f xi, eta(X) d/dt) on M x R with the product metric,
/// sampled on hat-real frame vectors.
ProductStructureCheck product_complex_structure_check(int n, std::size_t samples,
                                                      std::uint64_t seed);

/// J applied to (X, f); returns the pair as a frame vector plus the d/dt part.
std::pair<ComponentTensor, Complex> apply_product_structure(const ComponentTensor& X, Complex f);

}  // namespace agcurv
