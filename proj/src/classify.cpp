#include "agcurv/classify.hpp"

#include <algorithm>
#include <cmath>

#include "agcurv/constructions.hpp"

namespace agcurv {

namespace {

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

ComponentTensor apply_phi(const ComponentTensor& phi, const ComponentTensor& X) {
  ComponentTensor out = ComponentTensor::upper(X.n(), 1);
  for (int i = 0; i < X.extent(); ++i) {
    Complex v = 0.0;
    for (int j = 0; j < X.extent(); ++j) v += phi(i, j) * X(j);
    out(i) = v;
  }
  return out;
}

}  // namespace

RicciClassification classify_ricci(const ComponentTensor& ricci, const Metric& metric,
                                   double tol) {
  (void)metric;
  const int n = ricci.n();
  RicciClassification out;
  Complex lambda = 0.0;
  for (int a = 1; a <= n; ++a) {
    lambda += ricci(a + n, a);
    out.mixed_residual = std::max({out.mixed_residual, std::abs(ricci(a, 0)),
                                   std::abs(ricci(a + n, 0))});
    for (int b = 1; b <= n; ++b)
      out.latin_residual = std::max({out.latin_residual, std::abs(ricci(a, b)),
                                     std::abs(ricci(a + n, b + n))});
  }
  lambda /= static_cast<double>(n);
  out.lambda_residual = std::abs(lambda.imag());
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      out.lambda_residual =
          std::max(out.lambda_residual, std::abs(ricci(a + n, b) - lambda * delta(a, b)));
  out.lambda = lambda.real();
  out.mu = ricci(0, 0).real() - out.lambda;
  out.phi_invariant = out.latin_residual <= tol && out.mixed_residual <= tol;
  out.eta_einstein = out.phi_invariant && out.lambda_residual <= tol;
  out.einstein = out.eta_einstein && std::abs(out.mu) <= tol;
  return out;
}

Check check_phiGS(const ComponentTensor& G, const ComponentTensor& phi, double tol,
                  PhiGSMode mode) {
  const int n = G.n();
  Check out;
  if (mode == PhiGSMode::Components) {
    auto L = [](int a) { return a; };
    auto H = [n](int a) { return a + n; };
    double m = 0.0;
    auto probe = [&](int i, int j, int k, int l) {
      m = std::max({m, std::abs(G(i, j, k, l)),
                    std::abs(G(hat(i, n), hat(j, n), hat(k, n), hat(l, n)))});
    };
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        probe(L(a), 0, L(b), 0);
        probe(H(a), 0, L(b), 0);
        for (int c = 1; c <= n; ++c) {
          probe(L(a), 0, L(b), L(c));
          probe(H(a), 0, L(b), L(c));
          probe(L(a), 0, H(b), L(c));
          for (int d = 1; d <= n; ++d) {
            probe(L(a), L(b), L(c), L(d));
            probe(H(a), H(b), L(c), L(d));
          }
        }
      }
    out.residual = m;
  } else {
    const int dim = G.extent();
    double m = 0.0;
    G.for_each([&](std::span<const int> x, const Complex&) {
      const int i = x[0], j = x[1], k = x[2], l = x[3];
      Complex v = 0.0;
      for (int q = 0; q < dim; ++q) {
        if (phi(q, j) != 0.0) v += G(i, q, k, l) * phi(q, j);
        if (phi(q, i) != 0.0) v += G(q, j, k, l) * phi(q, i);
      }
      m = std::max(m, std::abs(v));
    });
    out.residual = m;
  }
  out.passed = out.residual <= tol;
  return out;
}

Complex ghs_value(const ComponentTensor& G, const Metric& metric, const ComponentTensor& phi,
                  const ComponentTensor& X, double tol) {
  if (X.rank() != 1 || X.n() != G.n()) throw TensorError("ghs_value: X must be a frame vector");
  if (std::abs(X(0)) > tol) throw TensorError("ghs_value: X must lie in ker(eta)");
  if (X.max_abs() == 0.0) throw TensorError("ghs_value: X must be non-zero");
  Complex norm = 0.0;
  for (int i = 0; i < X.extent(); ++i)
    for (int j = 0; j < X.extent(); ++j) norm += metric.g(i, j) * X(i) * X(j);
  if (std::abs(norm) <= tol) throw TensorError("ghs_value: g(X,X) vanishes");

  const ComponentTensor PX = apply_phi(phi, X);
  Complex num = 0.0;
  G.for_each([&](std::span<const int> x, const Complex& v) {
    if (v == 0.0) return;
    num += v * PX(x[0]) * X(x[1]) * PX(x[2]) * X(x[3]);
  });
  return num / (norm * norm);
}

ComponentTensor random_kernel_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComponentTensor X = ComponentTensor::upper(n, 1);
  double norm = 0.0;
  for (int a = 1; a <= n; ++a) {
    const double re = normal(rng);
    const Complex v(re, normal(rng));
    X(a) = v;
    X(a + n) = std::conj(v);
    norm += 2.0 * std::norm(v);
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& v : X.values()) v *= scale;
  return X;
}

GhsSampling sample_ghs(const ComponentTensor& G, const Metric& metric,
                       const ComponentTensor& phi, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> values;
  GhsSampling out;
  for (std::size_t k = 0; k < count; ++k) {
    const Complex v = ghs_value(G, metric, phi, random_kernel_vector(G.n(), rng));
    values.push_back(v.real());
    out.max_imag = std::max(out.max_imag, std::abs(v.imag()));
  }
  out.samples = count;
  if (count == 0) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / count;
  double var = 0.0;
  for (double v : values) var += (v - out.mean) * (v - out.mean);
  out.stddev = count > 1 ? std::sqrt(var / (count - 1)) : 0.0;
  return out;
}

ConstantFit check_constant_GPhiHS(const ComponentTensor& G, double tol) {
  const int n = G.n();
  DenseArray block = latin_array(n, 4);  // (a,d,b,c)
  DenseArray target = latin_array(n, 4);
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          block(a, d, b, c) = G(a + 1 + n, b + 1, c + 1, d + 1 + n);
          target(a, d, b, c) = delta(a, b) * delta(d, c) + delta(a, c) * delta(d, b);
        }
  block = symmetrize(symmetrize(block, {0, 1}), {2, 3});

  Complex num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < block.size(); ++i) {
    num += target.values()[i].real() * block.values()[i];
    den += std::norm(target.values()[i]);
  }
  const Complex half_gamma = num / den;
  ConstantFit out;
  out.value = 2.0 * half_gamma.real();
  out.residual = 2.0 * std::abs(half_gamma.imag());
  for (std::size_t i = 0; i < block.size(); ++i)
    out.residual = std::max(
        out.residual, std::abs(block.values()[i] - 0.5 * out.value * target.values()[i]));
  out.passed = out.residual <= tol;
  return out;
}

ConstantCurvatureFit check_constant_generalized(const ComponentTensor& G, const Metric& metric,
                                                double tol) {
  const ComponentTensor shape = metric_square(metric);
  Complex num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < G.size(); ++i) {
    num += std::conj(shape.values()[i]) * G.values()[i];
    den += std::norm(shape.values()[i]);
  }
  const Complex kappa = num / den;
  ConstantCurvatureFit out;
  out.value = kappa.real();
  out.residual = std::abs(kappa.imag());
  for (std::size_t i = 0; i < G.size(); ++i)
    out.residual = std::max(out.residual,
                            std::abs(G.values()[i] - out.value * shape.values()[i]));
  out.passed = out.residual <= tol;

  const int n = G.n();
  Complex diag = 0.0;
  for (int a = 1; a <= n; ++a) diag += G(a + n, 0, a, 0);
  diag /= static_cast<double>(n);
  out.components.value = diag.real();
  out.components.residual =
      std::max(std::abs(diag.imag()),
               max_abs_diff(G, constant_curvature_from_components(n, diag.real())));
  out.components.passed = out.components.residual <= tol;
  return out;
}

DependentIdentity check_dependent_identity(const CurvatureBundle& b, double tol,
                                           bool kenmotsu_type) {
  const int n = b.n;
  const double nn = n;
  const auto& c = b.coeffs;
  DependentIdentity out;
  out.alpha = c.a1 + c.a0 / (6.0 * nn);
  out.beta = 2.0 * c.a2 + c.a0 / (6.0 * nn * (2.0 * nn + 1.0));

  const ComponentTensor E = kulkarni_nomizu(b.metric.g, b.ricci);
  const ComponentTensor F = metric_square(b.metric);
  b.G.for_each([&](std::span<const int> x, const Complex& g) {
    const int i = x[0], j = x[1], k = x[2], l = x[3];
    const Complex rhs = c.a0 / 3.0 * (b.P(i, j, k, l) - b.P(j, i, k, l) + b.C(i, j, k, l));
    out.identity_residual = std::max(out.identity_residual, std::abs(g - rhs));
    const Complex alt = out.alpha * E(i, j, k, l) + out.beta * b.s * F(i, j, k, l);
    out.alpha_form_residual = std::max(out.alpha_form_residual, std::abs(alt));
  });
  out.holds = out.identity_residual <= tol;
  out.scalar_constraint =
      std::abs(c.a0 + 4.0 * nn * c.a1 + 4.0 * nn * (2.0 * nn + 1.0) * c.a2);

  const double denom = out.alpha + 2.0 * nn * out.beta;
  if (std::abs(out.alpha) > 1e-14) {
    const double factor = -denom * b.s / ((2.0 * nn - 1.0) * out.alpha);
    double m = 0.0;
    for (std::size_t i = 0; i < b.ricci.size(); ++i)
      m = std::max(m, std::abs(b.ricci.values()[i] - factor * b.metric.g.values()[i]));
    out.einstein_residual = m;
  }
  if (kenmotsu_type && std::abs(denom) > 1e-14)
    out.kenmotsu_scalar_residual =
        std::abs(b.s - 2.0 * nn * (2.0 * nn - 1.0) * out.alpha / denom);
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::NotApplicable:
      return "not-applicable";
  }
  return "not-applicable";
}

ClassificationReport classify(const CurvatureBundle& b, double tol, std::uint64_t sample_seed) {
  ClassificationReport out;
  const ComponentTensor phi = make_phi(b.n);

  const RicciClassification rc = classify_ricci(b.ricci, b.metric, tol);
  out.flags["einstein"] = rc.einstein;
  out.flags["eta_einstein"] = rc.eta_einstein;
  out.flags["phi_invariant"] = rc.phi_invariant;
  out.lambda = rc.lambda;
  out.mu = rc.mu;
  out.residuals["lambda_fit"] = rc.lambda_residual;
  out.residuals["ricci_latin"] = rc.latin_residual;
  out.residuals["ricci_mixed"] = rc.mixed_residual;

  const Check gs = check_phiGS(b.G, phi, tol, PhiGSMode::Components);
  const Check gs_contract = check_phiGS(b.G, phi, tol, PhiGSMode::Contraction);
  out.flags["phi_gs_symmetric"] = gs.passed;
  out.flags["phi_gs_symmetric_contraction"] = gs_contract.passed;
  out.residuals["phi_gs_components"] = gs.residual;
  out.residuals["phi_gs_contraction"] = gs_contract.residual;

  const ConstantFit ghs = check_constant_GPhiHS(b.G, tol);
  out.flags["constant_gphihs"] = ghs.passed;
  out.gamma = ghs.value;
  out.residuals["gamma_fit"] = ghs.residual;

  const GhsSampling sampled = sample_ghs(b.G, b.metric, phi, 100, sample_seed);
  out.flags["constant_gphihs_sampled"] = sampled.stddev <= tol && sampled.max_imag <= tol;
  out.residuals["ghs_sample_mean"] = sampled.mean;
  out.residuals["ghs_sample_stddev"] = sampled.stddev;

  const ConstantCurvatureFit cc = check_constant_generalized(b.G, b.metric, tol);
  out.flags["constant_generalized_curvature"] = cc.passed;
  out.kappa = cc.value;
  out.residuals["kappa_fit"] = cc.residual;
  out.residuals["kappa_components_fit"] = cc.components.residual;

  out.flags["flat_generalized"] = b.G.max_abs() <= tol;
  out.residuals["G_max_abs"] = b.G.max_abs();
  out.residuals["K_max_abs"] = b.K.max_abs();

  const DependentIdentity dep = check_dependent_identity(b, tol);
  out.flags["dependent_identity"] = dep.holds;
  out.residuals["dependent_identity"] = dep.identity_residual;
  out.residuals["dependent_identity_alpha_form"] = dep.alpha_form_residual;
  out.residuals["scalar_curvature"] = b.s;
  out.residuals["completion_conflict"] = b.completion_conflict;
  return out;
}

}  // namespace agcurv
