#include "agcurv/curvature.hpp"

#include <cmath>

namespace agcurv {

namespace {

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

// delta^a_{[c} delta^b_{d]} as a Latin array (a,b,c,d).
DenseArray antisymmetric_delta(int n) {
  DenseArray dd = latin_array(n, 4);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) dd(a, b, a, b) = 1.0;
  return antisymmetrize(dd, {2, 3});
}

void check_admissible(const StructureData& s, const BuildOptions& options) {
  check_shapes(s);
  if (!options.require_admissible) return;
  if (!validate_admissible(s, options.tolerance).admissible())
    throw TensorError("structure data is not admissible");
}

}  // namespace

RiemannTensors build_riemann(const StructureData& s, const BuildOptions& options) {
  check_admissible(s, options);
  const int n = s.n;
  SymmetryCompletion fill(ComponentTensor::lower(n, 4), curvature_symmetries(),
                          options.tolerance, options.strict);

  const DenseArray pair = pair_antisymmetric_part(s);
  const DenseArray dd = antisymmetric_delta(n);
  const DenseArray mixed = mixed_curvature_block(s);
  const DenseArray reduced = reduced_a22(s);

  // Latin a (0-based) is frame index a+1, its hat a+1+n. Lowering the first
  // slot maps R^a_{jkl} to R_{a^ jkl}.
  auto L = [](int a) { return a + 1; };
  auto H = [n](int a) { return a + 1 + n; };
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) fill.set_at(-delta(a, c), H(a), 0, L(c), 0);

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          fill.set_at(2.0 * (pair(a, b, c, d) - dd(a, b, c, d)), H(a), H(b), L(c), L(d));
          fill.set_at(mixed(a, b, c, d), H(a), H(b), L(c), H(d));
          fill.set_at(2.0 * s.A13(a, b, c, d), H(a), L(b), L(c), L(d));
          fill.set_at(reduced(a, d, b, c) - delta(a, c) * delta(d, b), H(a), L(b), L(c), H(d));
        }
  fill.bianchi_fill();

  RiemannTensors out;
  out.lower = fill.result();
  out.mixed = raise_index(out.lower, 0, make_metric(n));
  out.completion_conflict = fill.conflict();
  return out;
}

RicciData ricci_data(ComponentTensor ricci, const Metric& metric) {
  RicciData out;
  out.Q = raise_index(ricci, 0, metric);
  Complex s = 0.0;
  for (int j = 0; j < ricci.extent(); ++j)
    for (int l = 0; l < ricci.extent(); ++l) s += metric.ginv(j, l) * ricci(j, l);
  out.s = s.real();
  out.s_imag = s.imag();
  out.ricci = std::move(ricci);
  return out;
}

RicciData ricci_from_structure(const StructureData& s, const BuildOptions& options) {
  check_admissible(s, options);
  const int n = s.n;
  SymmetryCompletion fill(ComponentTensor::lower(n, 2), symmetric_pair(), options.tolerance,
                          options.strict);
  const DenseArray pair = pair_antisymmetric_part(s);

  fill.set_at(Complex(-2.0 * n), 0, 0);
  for (int a = 0; a < n; ++a) {
    fill.set_at(Complex(0.0), a + 1, 0);
    for (int b = 0; b < n; ++b) {
      Complex rab = 0.0;
      Complex rhat = -2.0 * n * delta(a, b);
      for (int c = 0; c < n; ++c) {
        rab += -2.0 * s.A13(c, a, b, c) + s.B31_lower(c, a, b, c);
        rhat += -2.0 * pair(c, a, b, c) + s.A22(a, c, c, b);
        for (int h = 0; h < n; ++h) {
          rab -= s.B3d(c, a, h) * s.B3d(h, b, c);
          rhat -= s.B3u(a, h, b) * s.B3d(c, h, c);
        }
      }
      fill.set_at(rab, a + 1, b + 1);
      fill.set_at(rhat, a + 1 + n, b + 1);
    }
  }
  RicciData out = ricci_data(fill.result(), make_metric(n));
  out.completion_conflict = fill.conflict();
  return out;
}

RicciData ricci_from_riemann(const ComponentTensor& R4, const Metric& metric) {
  ComponentTensor ricci = ComponentTensor::lower(R4.n(), 2);
  const int dim = R4.extent();
  for (int j = 0; j < dim; ++j)
    for (int l = 0; l < dim; ++l) {
      Complex sum = 0.0;
      for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
          const Complex w = metric.ginv(i, k);
          if (w != 0.0) sum += w * R4(i, j, k, l);
        }
      ricci(j, l) = sum;
    }
  return ricci_data(std::move(ricci), metric);
}

ComponentTensor kulkarni_nomizu(const ComponentTensor& h, const ComponentTensor& k) {
  ComponentTensor out = ComponentTensor::lower(h.n(), 4);
  out.for_each([&](std::span<const int> x, Complex& v) {
    const int i = x[0], j = x[1], kk = x[2], l = x[3];
    v = h(i, kk) * k(j, l) - h(i, l) * k(j, kk) + k(i, kk) * h(j, l) - k(i, l) * h(j, kk);
  });
  return out;
}

ComponentTensor metric_square(const Metric& metric) {
  const auto& g = metric.g;
  ComponentTensor out = ComponentTensor::lower(g.n(), 4);
  out.for_each([&](std::span<const int> x, Complex& v) {
    v = g(x[0], x[2]) * g(x[1], x[3]) - g(x[0], x[3]) * g(x[1], x[2]);
  });
  return out;
}

ComponentTensor build_generalized(const ComponentTensor& R4, const ComponentTensor& ricci,
                                  double s, const Metric& metric,
                                  const CoefficientTriple& coeffs) {
  const ComponentTensor mixed = kulkarni_nomizu(metric.g, ricci);
  const ComponentTensor gg = metric_square(metric);
  ComponentTensor out = ComponentTensor::lower(R4.n(), 4);
  for (std::size_t i = 0; i < out.size(); ++i)
    out.values()[i] = coeffs.a0 * R4.values()[i] + coeffs.a1 * mixed.values()[i] +
                      2.0 * coeffs.a2 * s * gg.values()[i];
  return out;
}

ComponentTensor generalized_components_formula(const StructureData& s, const RicciData& ricci,
                                               const CoefficientTriple& coeffs,
                                               const BuildOptions& options) {
  check_admissible(s, options);
  const int n = s.n;
  const double a0 = coeffs.a0, a1 = coeffs.a1, a2 = coeffs.a2;
  const double sc = ricci.s;
  const auto& r = ricci.ricci;
  const auto& Q = ricci.Q;
  auto L = [](int a) { return a + 1; };
  auto H = [n](int a) { return a + 1 + n; };

  // delta^a_c Q^b_d and delta^a_c delta^b_d, antisymmetrized over [ab] and [cd].
  DenseArray dq = latin_array(n, 4);
  DenseArray dd = latin_array(n, 4);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        dq(a, b, a, d) = Q(L(b), L(d));
        dd(a, b, a, b) = 1.0;
      }
  dq = antisymmetrize(antisymmetrize(dq, {0, 1}), {2, 3});
  dd = antisymmetrize(antisymmetrize(dd, {0, 1}), {2, 3});
  const DenseArray pair = pair_antisymmetric_part(s);
  const DenseArray reduced = reduced_a22(s);

  SymmetryCompletion fill(ComponentTensor::lower(n, 4), curvature_symmetries(),
                          options.tolerance, options.strict);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      fill.set_at(a1 * r(L(a), L(b)), L(a), 0, L(b), 0);
      fill.set_at(-(a0 + 2.0 * n * a1 - 2.0 * a2 * sc) * delta(a, b) + a1 * r(H(a), L(b)),
                  H(a), 0, L(b), 0);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          fill.set_at(2.0 * a0 * s.A13(a, b, c, d) +
                          a1 * (delta(a, c) * r(L(b), L(d)) - delta(a, d) * r(L(b), L(c))),
                      H(a), L(b), L(c), L(d));
          fill.set_at(a0 * reduced(a, d, b, c) +
                          a1 * (delta(a, c) * Q(L(d), L(b)) + delta(d, b) * Q(L(a), L(c))) +
                          (2.0 * a2 * sc - a0) * delta(a, c) * delta(d, b),
                      H(a), L(b), L(c), H(d));
          fill.set_at(2.0 * a0 * pair(a, b, c, d) + 4.0 * a1 * dq(a, b, c, d) +
                          2.0 * (2.0 * a2 * sc - a0) * dd(a, b, c, d),
                      H(a), H(b), L(c), L(d));
        }
  fill.bianchi_fill();
  return fill.result();
}

ComponentTensor build_classical(ClassicalKind kind, const ComponentTensor& R4,
                                const ComponentTensor& ricci, double s, const Metric& metric) {
  const int n = R4.n();
  const auto& g = metric.g;
  ComponentTensor out = ComponentTensor::lower(n, 4);
  out.for_each([&](std::span<const int> x, Complex& v) {
    const int i = x[0], j = x[1], k = x[2], l = x[3];
    switch (kind) {
      case ClassicalKind::Projective:
        v = R4(i, j, k, l) - (g(i, k) * ricci(j, l) - g(i, l) * ricci(j, k)) / (2.0 * n);
        break;
      case ClassicalKind::Concircular:
        v = R4(i, j, k, l) - s / (2.0 * n * (2.0 * n + 1.0)) *
                                 (g(i, k) * g(j, l) - g(i, l) * g(j, k));
        break;
      case ClassicalKind::Conharmonic:
        v = R4(i, j, k, l) - (g(i, k) * ricci(j, l) - g(i, l) * ricci(j, k) +
                              ricci(i, k) * g(j, l) - ricci(i, l) * g(j, k)) /
                                 (2.0 * n - 1.0);
        break;
    }
  });
  return out;
}

CurvatureBundle build_bundle(const StructureData& s, const CoefficientTriple& coeffs,
                             const BuildOptions& options) {
  const RiemannTensors riemann = build_riemann(s, options);
  RicciData ricci = ricci_from_structure(s, options);
  CurvatureBundle b = bundle_from_tensors(riemann.lower, ricci.ricci, coeffs);
  b.Rmixed = riemann.mixed;
  b.completion_conflict = std::max(riemann.completion_conflict, ricci.completion_conflict);
  return b;
}

CurvatureBundle bundle_from_tensors(const ComponentTensor& R4, const ComponentTensor& ricci,
                                    const CoefficientTriple& coeffs) {
  CurvatureBundle b;
  b.n = R4.n();
  b.metric = make_metric(b.n);
  b.coeffs = coeffs;
  b.R4 = R4;
  b.Rmixed = raise_index(R4, 0, b.metric);
  const RicciData data = ricci_data(ricci, b.metric);
  b.ricci = data.ricci;
  b.Q = data.Q;
  b.s = data.s;
  b.G = build_generalized(R4, b.ricci, b.s, b.metric, coeffs);
  b.P = build_classical(ClassicalKind::Projective, R4, b.ricci, b.s, b.metric);
  b.C = build_classical(ClassicalKind::Concircular, R4, b.ricci, b.s, b.metric);
  b.K = build_classical(ClassicalKind::Conharmonic, R4, b.ricci, b.s, b.metric);
  return b;
}

}  // namespace agcurv
