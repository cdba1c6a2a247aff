#include "agcurv/constructions.hpp"

#include <cmath>

namespace agcurv {

namespace {

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

// delta^a_{[c} delta^b_{d]} as (a,b,c,d)
DenseArray pair_delta(int n) {
  DenseArray out = latin_array(n, 4);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          out(a, b, c, d) = 0.5 * (delta(a, c) * delta(b, d) - delta(a, d) * delta(b, c));
  return out;
}

// delta^a_b delta^d_c + delta^a_c delta^d_b as (a,d,b,c)
DenseArray sym_delta(int n) {
  DenseArray out = latin_array(n, 4);
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          out(a, d, b, c) = delta(a, b) * delta(d, c) + delta(a, c) * delta(d, b);
  return out;
}

DenseArray scaled(DenseArray a, double k) {
  for (auto& v : a.values()) v *= k;
  return a;
}

StructureParameters base_parameters(int n, const DenseArray& B3u) {
  StructureParameters p;
  p.B3u = B3u;
  p.mixed_block = latin_array(n, 4);
  p.pair_block = latin_array(n, 4);
  p.pair_sym = latin_array(n, 4);
  p.hermitian = latin_array(n, 4);
  return p;
}

// kappa of eta_einstein_instance(k) when it is of constant curvature:
// kappa(k) = kappa0 + k * slope.
struct KappaLine {
  double kappa0;
  double slope;
};

KappaLine kappa_line(int n, const CoefficientTriple& c) {
  const double nn = n;
  const double lambda0 = -2.0 * nn, lambda1 = 2.0 * nn - 1.0;
  const double s0 = -2.0 * nn - 4.0 * nn * nn, s1 = 2.0 * nn * (2.0 * nn - 1.0);
  return {-c.a0 - 2.0 * nn * c.a1 + 2.0 * c.a2 * s0 + c.a1 * lambda0,
          2.0 * c.a2 * s1 + c.a1 * lambda1};
}

bool forces_zero_scale(int n, const CoefficientTriple& c) {
  return std::abs(c.a0 + (2.0 * n - 1.0) * c.a1) > 1e-12;
}

}  // namespace

StructureData eta_einstein_instance(int n, const DenseArray& B3u, double k) {
  StructureParameters p = base_parameters(n, B3u);
  p.pair_block = scaled(pair_delta(n), k);
  p.hermitian = scaled(sym_delta(n), 0.5 * k);
  return assemble_structure(n, p);
}

ConstantCurvatureSolution constant_curvature_solution(int n, const CoefficientTriple& coeffs,
                                                      double k_hint) {
  ConstantCurvatureSolution out;
  out.k = forces_zero_scale(n, coeffs) ? 0.0 : k_hint;
  const KappaLine line = kappa_line(n, coeffs);
  out.kappa = line.kappa0 + out.k * line.slope;
  return out;
}

std::optional<double> flat_solution(int n, const CoefficientTriple& coeffs, double tol) {
  const KappaLine line = kappa_line(n, coeffs);
  if (forces_zero_scale(n, coeffs) || std::abs(line.slope) < 1e-12) {
    if (std::abs(line.kappa0) <= tol) return 0.0;
    return std::nullopt;
  }
  return -line.kappa0 / line.slope;
}

DenseArray traceless_hermitian(const DenseArray& raw) {
  DenseArray K = project_hermitian(raw);
  const int n = K.extent();
  const double nn = n;
  DenseArray M = latin_array(n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) M(a, b) += K(a, c, c, b);
  Complex trM = 0.0;
  for (int a = 0; a < n; ++a) trM += M(a, a);
  const Complex trV = 4.0 * trM / (2.0 * nn + 2.0);
  DenseArray V = latin_array(n, 2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) V(a, b) = (4.0 * M(a, b) - delta(a, b) * trV) / (nn + 2.0);
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          K(a, d, b, c) -= 0.25 * (delta(a, b) * V(d, c) + delta(a, c) * V(d, b) +
                                   delta(d, b) * V(a, c) + delta(d, c) * V(a, b));
  return K;
}

std::optional<StructureData> phi_gs_instance(int n, const DenseArray& B3u,
                                             const CoefficientTriple& c,
                                             const DenseArray& traceless) {
  const double nn = n;
  const double d = c.a1 + 4.0 * nn * c.a2;
  if (std::abs(c.a0) < 1e-12 || std::abs(d) < 1e-12) return std::nullopt;
  const double lambda = (c.a0 + 2.0 * nn * c.a1 + 4.0 * nn * c.a2) / d;
  const double s = -2.0 * nn + 2.0 * nn * lambda;
  const double p = -(2.0 * c.a1 * lambda + 2.0 * c.a2 * s - c.a0) / c.a0;
  const double h = (lambda + 2.0 * nn + 1.5 * p * (1.0 - nn)) / (nn + 1.0);

  StructureParameters params = base_parameters(n, B3u);
  params.pair_block = scaled(pair_delta(n), p);
  params.hermitian = scaled(sym_delta(n), h);
  for (std::size_t i = 0; i < params.hermitian.size(); ++i)
    params.hermitian.values()[i] += traceless.values()[i];
  return assemble_structure(n, params);
}

StructureData constant_ghs_instance(int n, const DenseArray& B3u, const DenseArray& mixed_block,
                                    double h) {
  StructureParameters p = base_parameters(n, B3u);
  p.mixed_block = mixed_block;
  p.hermitian = scaled(sym_delta(n), h);
  return assemble_structure(n, p);
}

ComponentTensor constant_curvature_tensor(int n, double kappa) {
  ComponentTensor out = metric_square(make_metric(n));
  for (auto& v : out.values()) v *= kappa;
  return out;
}

ComponentTensor constant_curvature_from_components(int n, double kappa) {
  SymmetryCompletion fill(ComponentTensor::lower(n, 4), curvature_symmetries());
  auto L = [](int a) { return a + 1; };
  auto H = [n](int a) { return a + 1 + n; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      fill.set_at(kappa * delta(a, b), H(a), 0, L(b), 0);
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          fill.set_at(kappa * delta(a, c) * delta(d, b), H(a), L(b), L(c), H(d));
          fill.set_at(kappa * (delta(a, c) * delta(b, d) - delta(a, d) * delta(b, c)), H(a),
                      H(b), L(c), L(d));
        }
    }
  fill.bianchi_fill();
  return fill.result();
}

}  // namespace agcurv
