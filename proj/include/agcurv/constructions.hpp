#pragma once

// Kenmotsu-type instances with prescribed curvature behaviour, used by the
// theorem audit and the acceptance suite.

#include <optional>

#include "agcurv/curvature.hpp"
#include "agcurv/structure.hpp"

namespace agcurv {

/// Instance with A^a_{bcd} = 0, B^{abd}_c = B^{ab}_h B^{hd}_c,
/// A^{ad}_{bc} = B^{ah}_c B_{bh}^d + k delta^a_c delta^d_b and
/// B^{ab}_{[cd]} = k delta^a_{[c} delta^b_{d]}. It is eta-Einstein with
/// lambda = -2n + k(2n-1), mu = -k(2n-1).
StructureData eta_einstein_instance(int n, const DenseArray& B3u, double k);

struct ConstantCurvatureSolution {
  double k = 0.0;
  double kappa = 0.0;
};

/// Scale k for which eta_einstein_instance has constant generalized curvature
/// under `coeffs`, with the resulting kappa. k is forced to 0 unless
/// a0 + (2n-1) a1 = 0, in which case `k_hint` is used.
ConstantCurvatureSolution constant_curvature_solution(int n, const CoefficientTriple& coeffs,
                                                      double k_hint = 0.0);

/// Scale k making the generalized tensor vanish, if the coefficients allow it.
std::optional<double> flat_solution(int n, const CoefficientTriple& coeffs,
                                    double tol = kDefaultTolerance);

/// Hermitian (a,d,b,c) array symmetric in both pairs with sum_c K^{ac}_{cb} = 0.
DenseArray traceless_hermitian(const DenseArray& raw);

/// Phi-generalized semisymmetric instance: the component list vanishes while
/// G_{a^ b c d^} carries `traceless` on top of its trace part. Needs a0 != 0
/// and a1 + 4n a2 != 0.
std::optional<StructureData> phi_gs_instance(int n, const DenseArray& B3u,
                                             const CoefficientTriple& coeffs,
                                             const DenseArray& traceless);

/// Instance with B^{ab}_{[cd]} = 0 and the Hermitian block h (delta delta + delta delta),
/// which has pointwise constant GPhiHS-curvature for every coefficient triple.
StructureData constant_ghs_instance(int n, const DenseArray& B3u, const DenseArray& mixed_block,
                                    double h);

/// Generalized tensor with constant curvature kappa: kappa (g g - g g).
ComponentTensor constant_curvature_tensor(int n, double kappa);

/// G assembled from the three component families with constant kappa,
/// completed by symmetry and conjugation.
ComponentTensor constant_curvature_from_components(int n, double kappa);

}  // namespace agcurv
