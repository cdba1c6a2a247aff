#pragma once

#include "agcurv/completion.hpp"
#include "agcurv/structure.hpp"
#include "agcurv/tensor.hpp"

namespace agcurv {

/// Scalars of the generalized curvature tensor
/// G = a0 R + a1 (g r - g r + r g - r g) + 2 a2 s (g g - g g).
struct CoefficientTriple {
  double a0 = 1.0;
  double a1 = 0.0;
  double a2 = 0.0;
};

struct BuildOptions {
  double tolerance = kDefaultTolerance;
  /// Throw on an inadmissible instance instead of building anyway.
  bool require_admissible = false;
  /// Throw CompletionError when completion meets contradicting entries;
  /// otherwise the worst discrepancy is kept in the bundle.
  bool strict = true;
};

struct RiemannTensors {
  ComponentTensor mixed;  // R^i_{jkl}
  ComponentTensor lower;  // R_{ijkl} = g_{ip} R^p_{jkl}
  double completion_conflict = 0.0;
};

/// Riemann tensor of a Kenmotsu-type instance from its structure tensors.
/// Convention: R(X,Y)Z = R^i_{jkl} X^k Y^l Z^j eps_i.
RiemannTensors build_riemann(const StructureData& s, const BuildOptions& options = {});

struct RicciData {
  ComponentTensor ricci;  // r_{ij}
  ComponentTensor Q;      // Q^k_j = g^{ki} r_{ij}
  double s = 0.0;
  double s_imag = 0.0;    // should vanish; kept for auditing
  double completion_conflict = 0.0;
};

/// Ricci tensor from the closed-form component expressions.
RicciData ricci_from_structure(const StructureData& s, const BuildOptions& options = {});
/// Ricci tensor by contraction, r_{jl} = g^{ik} R_{ijkl}.
RicciData ricci_from_riemann(const ComponentTensor& R4, const Metric& metric);

/// Adds Q and s to a given Ricci tensor.
RicciData ricci_data(ComponentTensor ricci, const Metric& metric);

/// Generalized curvature tensor assembled over every index tuple.
ComponentTensor build_generalized(const ComponentTensor& R4, const ComponentTensor& ricci,
                                  double s, const Metric& metric,
                                  const CoefficientTriple& coeffs);

/// Generalized curvature tensor from its Kenmotsu-type component families.
ComponentTensor generalized_components_formula(const StructureData& s,
                                               const RicciData& ricci,
                                               const CoefficientTriple& coeffs,
                                               const BuildOptions& options = {});

enum class ClassicalKind { Projective, Concircular, Conharmonic };

ComponentTensor build_classical(ClassicalKind kind, const ComponentTensor& R4,
                                const ComponentTensor& ricci, double s, const Metric& metric);

/// g_ik r_jl - g_il r_jk + r_ik g_jl - r_il g_jk
ComponentTensor kulkarni_nomizu(const ComponentTensor& h, const ComponentTensor& k);
/// g_ik g_jl - g_il g_jk
ComponentTensor metric_square(const Metric& metric);

struct CurvatureBundle {
  int n = 0;
  Metric metric;
  CoefficientTriple coeffs;
  ComponentTensor R4;
  ComponentTensor Rmixed;
  ComponentTensor ricci;
  ComponentTensor Q;
  double s = 0.0;
  ComponentTensor G;
  ComponentTensor P;
  ComponentTensor C;
  ComponentTensor K;
  double completion_conflict = 0.0;
};

/// Riemann and Ricci (formula route), then G, P, C, K.
CurvatureBundle build_bundle(const StructureData& s, const CoefficientTriple& coeffs,
                             const BuildOptions& options = {});

/// Bundle from an arbitrary Riemann tensor and Ricci tensor (no structure data).
CurvatureBundle bundle_from_tensors(const ComponentTensor& R4, const ComponentTensor& ricci,
                                    const CoefficientTriple& coeffs);

}  // namespace agcurv
