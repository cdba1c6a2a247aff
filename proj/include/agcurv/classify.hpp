#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "agcurv/curvature.hpp"

namespace agcurv {

struct RicciClassification {
  bool einstein = false;
  bool eta_einstein = false;
  bool phi_invariant = false;
  double lambda = 0.0;  // diagonal mean of r_{a^ b}
  double mu = 0.0;      // r_00 - lambda
  double latin_residual = 0.0;   // max |r_ab|
  double mixed_residual = 0.0;   // max |r_a0|
  double lambda_residual = 0.0;  // max |r_{a^ b} - lambda delta|, includes Im(lambda)
};

RicciClassification classify_ricci(const ComponentTensor& ricci, const Metric& metric,
                                   double tol = kDefaultTolerance);

enum class PhiGSMode { Components, Contraction };

struct Check {
  bool passed = false;
  double residual = 0.0;
};

/// Components: the listed G_{a0b0}, G_{a^0b0}, G_{a0bc}, G_{a^0bc}, G_{a0b^c},
/// G_{abcd}, G_{a^b^cd} vanish. Contraction: G_{iqkl} Phi^q_j + G_{tjkl} Phi^t_i = 0.
Check check_phiGS(const ComponentTensor& G, const ComponentTensor& phi,
                  double tol = kDefaultTolerance, PhiGSMode mode = PhiGSMode::Components);

/// Generalized Phi-holomorphic sectional curvature at X in ker(eta):
/// G(Phi X, X, Phi X, X) / g(X,X)^2. The slot order matches the sign under
/// which a constant-curvature tensor kappa (g g - g g) gives kappa.
Complex ghs_value(const ComponentTensor& G, const Metric& metric, const ComponentTensor& phi,
                  const ComponentTensor& X, double tol = kDefaultTolerance);

/// Hat-real, unit-length vector with X^0 = 0.
ComponentTensor random_kernel_vector(int n, std::mt19937_64& rng);

struct GhsSampling {
  double mean = 0.0;
  double stddev = 0.0;
  double max_imag = 0.0;
  std::size_t samples = 0;
};

GhsSampling sample_ghs(const ComponentTensor& G, const Metric& metric,
                       const ComponentTensor& phi, std::size_t count, std::uint64_t seed);

struct ConstantFit {
  bool passed = false;
  double value = 0.0;
  double residual = 0.0;
};

/// Fits B^{(a d)}_{(bc)} = (gamma/2) (delta^a_b delta^d_c + delta^a_c delta^d_b),
/// reading B^{ad}_{bc} as G_{a^ b c d^}.
ConstantFit check_constant_GPhiHS(const ComponentTensor& G, double tol = kDefaultTolerance);

struct ConstantCurvatureFit : ConstantFit {
  /// Fit through the three component families only, rest required zero.
  ConstantFit components;
};

ConstantCurvatureFit check_constant_generalized(const ComponentTensor& G, const Metric& metric,
                                                double tol = kDefaultTolerance);

struct DependentIdentity {
  double identity_residual = 0.0;  // G - (a0/3)(P - P^swap + C)
  double alpha_form_residual = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  bool holds = false;
  std::optional<double> einstein_residual;  // r + ((alpha + 2n beta) s / ((2n-1) alpha)) g
  double scalar_constraint = 0.0;           // a0 + 4n a1 + 4n(2n+1) a2
  std::optional<double> kenmotsu_scalar_residual;  // s - 2n(2n-1) alpha / (alpha + 2n beta)
};

DependentIdentity check_dependent_identity(const CurvatureBundle& bundle,
                                           double tol = kDefaultTolerance,
                                           bool kenmotsu_type = true);

enum class Verdict { Pass, Fail, NotApplicable };
const char* to_string(Verdict v);

struct AuditEntry {
  Verdict verdict = Verdict::NotApplicable;
  std::string note;
  std::map<std::string, double> residuals;
};

/// A sampled instance on which the two sides of an equivalence disagree.
struct Finding {
  std::string theorem;
  std::string direction;
  std::string description;
  std::map<std::string, double> residuals;
  std::optional<StructureData> witness;
  CoefficientTriple coeffs;
};

struct ClassificationReport {
  std::map<std::string, bool> flags;
  std::optional<double> lambda, mu, gamma, kappa;
  std::map<std::string, double> residuals;
  std::map<std::string, AuditEntry> audit;
  std::vector<Finding> findings;
};

/// Classification flags and constants of one bundle.
ClassificationReport classify(const CurvatureBundle& bundle, double tol = kDefaultTolerance,
                              std::uint64_t sample_seed = 0);

/// Builds the bundle and checks every theorem whose hypotheses apply.
ClassificationReport audit_theorems(const StructureData& s, const CoefficientTriple& coeffs,
                                    double tol = kDefaultTolerance,
                                    std::uint64_t sample_seed = 0);

}  // namespace agcurv
