#include <algorithm>
#include <cmath>

#include "agcurv/classify.hpp"
#include "agcurv/constructions.hpp"

namespace agcurv {

namespace {

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

bool nonzero(double x) { return std::abs(x) > 1e-12; }

using Residuals = std::map<std::string, double>;

double worst(const Residuals& r) {
  double m = 0.0;
  for (const auto& [name, v] : r) m = std::max(m, std::abs(v));
  return m;
}

// Ricci part of the conditions: eta-Einstein with the given lambda and
// mu = -(2n + lambda).
Residuals eta_einstein_conditions(const RicciClassification& rc, int n, double lambda) {
  return {{"ricci_latin", rc.latin_residual},
          {"ricci_mixed", rc.mixed_residual},
          {"lambda_fit", rc.lambda_residual},
          {"lambda", rc.lambda - lambda},
          {"mu", rc.mu + 2.0 * n + rc.lambda}};
}

double a13_residual(const StructureData& s) { return s.A13.max_abs(); }

// A^{ad}_{bc} - B^{ah}_c B_{bh}^d - m delta^a_c delta^d_b
double a22_residual(const StructureData& s, double m) {
  const DenseArray reduced = reduced_a22(s);
  const int n = s.n;
  double out = 0.0;
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          out = std::max(out,
                         std::abs(reduced(a, d, b, c) - m * delta(a, c) * delta(d, b)));
  return out;
}

// B^{ab}_{[cd]} - m delta^a_{[c} delta^b_{d]}
double b22_residual(const StructureData& s, double m) {
  const DenseArray pair = pair_antisymmetric_part(s);
  const int n = s.n;
  double out = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const double dd = 0.5 * (delta(a, c) * delta(b, d) - delta(a, d) * delta(b, c));
          out = std::max(out, std::abs(pair(a, b, c, d) - m * dd));
        }
  return out;
}

// Symmetrized A22 against the constant-GPhiHS right-hand side for gamma.
double ghs_equality_residual(const StructureData& s, const CurvatureBundle& b, double gamma) {
  const int n = s.n;
  const auto& c = b.coeffs;
  DenseArray lhs = latin_array(n, 4);
  DenseArray rhs = latin_array(n, 4);
  const double scale = (gamma - 2.0 * c.a2 * b.s + c.a0) / (2.0 * c.a0);
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d)
      for (int bb = 0; bb < n; ++bb)
        for (int cc = 0; cc < n; ++cc) {
          Complex quad = 0.0;
          for (int h = 0; h < n; ++h) quad += s.B3u(a, h, cc) * s.B3d(bb, h, d);
          lhs(a, d, bb, cc) = s.A22(a, d, bb, cc);
          rhs(a, d, bb, cc) =
              quad -
              c.a1 / c.a0 *
                  (delta(a, cc) * b.Q(d + 1, bb + 1) + delta(d, bb) * b.Q(a + 1, cc + 1)) +
              scale * (delta(a, bb) * delta(d, cc) + delta(a, cc) * delta(d, bb));
        }
  lhs = symmetrize(symmetrize(lhs, {0, 1}), {2, 3});
  rhs = symmetrize(symmetrize(rhs, {0, 1}), {2, 3});
  return max_abs_diff(lhs, rhs);
}

class Auditor {
 public:
  Auditor(const StructureData& s, const CoefficientTriple& coeffs, double tol,
          std::uint64_t seed)
      : s_(s), coeffs_(coeffs), tol_(tol), seed_(seed) {}

  ClassificationReport run();

 private:
  void internal_consistency();
  void equivalence(const std::string& id, const std::string& lhs_name, bool lhs,
                   const std::string& rhs_name, bool rhs, Residuals residuals,
                   const std::string& note = {});
  void implication(const std::string& id, bool hypothesis, bool conclusion,
                   Residuals residuals, const std::string& description);
  void not_applicable(const std::string& id, const std::string& note);
  void constructed_failure(const std::string& id, const StructureData& instance,
                           Residuals residuals, const std::string& description);
  void construct_flat();
  void construct_constant_curvature();
  void construct_phi_gs();

  const StructureData& s_;
  CoefficientTriple coeffs_;
  double tol_;
  std::uint64_t seed_;
  CurvatureBundle b_;
  ClassificationReport report_;
};

void Auditor::not_applicable(const std::string& id, const std::string& note) {
  report_.audit[id] = {Verdict::NotApplicable, note, {}};
}

void Auditor::equivalence(const std::string& id, const std::string& lhs_name, bool lhs,
                          const std::string& rhs_name, bool rhs, Residuals residuals,
                          const std::string& note) {
  AuditEntry& e = report_.audit[id];
  e.residuals = residuals;
  e.note = note;
  if (lhs == rhs) {
    e.verdict = Verdict::Pass;
    return;
  }
  e.verdict = Verdict::Fail;
  Finding f;
  f.theorem = id;
  f.direction = lhs ? lhs_name + " => " + rhs_name : rhs_name + " => " + lhs_name;
  f.description = (lhs ? lhs_name : rhs_name) + " holds but " + (lhs ? rhs_name : lhs_name) +
                  " does not";
  f.residuals = std::move(residuals);
  f.witness = s_;
  f.coeffs = coeffs_;
  report_.findings.push_back(std::move(f));
}

void Auditor::implication(const std::string& id, bool hypothesis, bool conclusion,
                          Residuals residuals, const std::string& description) {
  if (!hypothesis) {
    not_applicable(id, "hypothesis not met");
    report_.audit[id].residuals = std::move(residuals);
    return;
  }
  AuditEntry& e = report_.audit[id];
  e.residuals = residuals;
  e.verdict = conclusion ? Verdict::Pass : Verdict::Fail;
  if (conclusion) return;
  Finding f;
  f.theorem = id;
  f.direction = "forward";
  f.description = description;
  f.residuals = std::move(residuals);
  f.witness = s_;
  f.coeffs = coeffs_;
  report_.findings.push_back(std::move(f));
}

void Auditor::constructed_failure(const std::string& id, const StructureData& instance,
                                  Residuals residuals, const std::string& description) {
  report_.audit[id].verdict = Verdict::Fail;
  Finding f;
  f.theorem = id;
  f.direction = "construction";
  f.description = description;
  f.residuals = std::move(residuals);
  f.witness = instance;
  f.coeffs = coeffs_;
  report_.findings.push_back(std::move(f));
}

void Auditor::internal_consistency() {
  const RiemannTensors riemann = build_riemann(s_, {tol_, false, false});
  const RicciData contracted = ricci_from_riemann(riemann.lower, b_.metric);
  const DenseArray& R = riemann.lower;

  Residuals r25{{"bianchi", bianchi_residual(R)},
                {"last_pair_antisymmetry", last_pair_antisymmetry_residual(R)},
                {"first_pair_antisymmetry", first_pair_antisymmetry_residual(R)},
                {"pair_symmetry", pair_symmetry_residual(R)},
                {"hat_reality", hat_reality_residual(R, s_.n)},
                {"completion_conflict", riemann.completion_conflict}};
  report_.audit["2.5"] = {worst(r25) <= tol_ ? Verdict::Pass : Verdict::Fail,
                          "curvature symmetries of the assembled Riemann tensor", r25};

  Residuals r26{{"formula_vs_contraction", max_abs_diff(b_.ricci, contracted.ricci)},
                {"r00", std::abs(b_.ricci(0, 0) + 2.0 * s_.n)},
                {"symmetry", max_abs_diff(b_.ricci, [&] {
                   ComponentTensor t = b_.ricci;
                   t.for_each([&](std::span<const int> x, Complex& v) { v = b_.ricci(x[1], x[0]); });
                   return t;
                 }())}};
  report_.audit["2.6"] = {worst(r26) <= tol_ ? Verdict::Pass : Verdict::Fail,
                          "Ricci formula against contraction", r26};

  const RicciData formula = ricci_from_structure(s_, {tol_, false, false});
  const ComponentTensor G2 =
      generalized_components_formula(s_, formula, coeffs_, {tol_, false, false});
  Residuals r31{{"definition_vs_components", max_abs_diff(b_.G, G2)},
                {"bianchi", bianchi_residual(b_.G)}};
  report_.audit["3.1"] = {worst(r31) <= tol_ ? Verdict::Pass : Verdict::Fail,
                          "generalized tensor from its definition and its components", r31};
}

void Auditor::construct_flat() {
  const auto k = flat_solution(s_.n, coeffs_, tol_);
  AuditEntry& e = report_.audit["3.2"];
  if (!k) {
    e.note += "; no flat instance exists for these coefficients";
    return;
  }
  const StructureData flat = eta_einstein_instance(s_.n, s_.B3u, *k);
  const CurvatureBundle fb = build_bundle(flat, coeffs_, {tol_, false, false});
  const RicciClassification rc = classify_ricci(fb.ricci, fb.metric, tol_);
  const double lambda = (coeffs_.a0 + 2.0 * s_.n * coeffs_.a1 - 2.0 * coeffs_.a2 * fb.s) /
                        coeffs_.a1;
  const double m = coeffs_.a1 / coeffs_.a0 * rc.mu;
  Residuals r = eta_einstein_conditions(rc, s_.n, lambda);
  r["A13"] = a13_residual(flat);
  r["A22"] = a22_residual(flat, m);
  r["B22"] = b22_residual(flat, m);
  const double conditions = worst(r);
  e.residuals["constructed_G_max_abs"] = fb.G.max_abs();
  e.residuals["constructed_conditions"] = conditions;
  if (fb.G.max_abs() > tol_ || conditions > tol_)
    constructed_failure("3.2", flat, e.residuals,
                        "constructed instance is not flat or misses the eta-Einstein conditions");
}

void Auditor::construct_constant_curvature() {
  const ConstantCurvatureSolution sol = constant_curvature_solution(s_.n, coeffs_, 0.5);
  const StructureData inst = eta_einstein_instance(s_.n, s_.B3u, sol.k);
  const CurvatureBundle cb = build_bundle(inst, coeffs_, {tol_, false, false});
  const ConstantCurvatureFit fit = check_constant_generalized(cb.G, cb.metric, tol_);
  const RicciClassification rc = classify_ricci(cb.ricci, cb.metric, tol_);
  const double lambda =
      (coeffs_.a0 + 2.0 * s_.n * coeffs_.a1 - 2.0 * coeffs_.a2 * cb.s + fit.value) / coeffs_.a1;
  const double m = coeffs_.a1 / coeffs_.a0 * rc.mu;
  Residuals r = eta_einstein_conditions(rc, s_.n, lambda);
  r["A13"] = a13_residual(inst);
  r["A22"] = a22_residual(inst, m);
  r["B22"] = b22_residual(inst, m);
  AuditEntry& e = report_.audit["4.6"];
  e.residuals["constructed_kappa_fit"] = fit.residual;
  e.residuals["constructed_kappa_error"] = fit.value - sol.kappa;
  e.residuals["constructed_conditions"] = worst(r);
  if (!fit.passed || std::abs(fit.value - sol.kappa) > tol_ || worst(r) > tol_)
    constructed_failure("4.6", inst, e.residuals,
                        "constructed instance misses constant curvature or its conditions");
}

void Auditor::construct_phi_gs() {
  const auto inst = phi_gs_instance(s_.n, s_.B3u, coeffs_, latin_array(s_.n, 4));
  if (!inst) return;
  const CurvatureBundle pb = build_bundle(*inst, coeffs_, {tol_, false, false});
  const Check gs = check_phiGS(pb.G, make_phi(s_.n), tol_);
  const RicciClassification rc = classify_ricci(pb.ricci, pb.metric, tol_);
  const double lambda = (coeffs_.a0 + 2.0 * s_.n * coeffs_.a1 - 2.0 * coeffs_.a2 * pb.s) /
                        coeffs_.a1;
  Residuals r = eta_einstein_conditions(rc, s_.n, lambda);
  r["B22"] = b22_residual(*inst, coeffs_.a1 / coeffs_.a0 * rc.mu);
  AuditEntry& e = report_.audit["3.10"];
  e.residuals["constructed_phi_gs"] = gs.residual;
  e.residuals["constructed_conditions"] = worst(r);
  if (!gs.passed || worst(r) > tol_)
    constructed_failure("3.10", *inst, e.residuals,
                        "constructed instance is not phi-GS-symmetric or misses its conditions");
}

ClassificationReport Auditor::run() {
  b_ = build_bundle(s_, coeffs_, {tol_, false, false});
  report_ = classify(b_, tol_, seed_);
  internal_consistency();

  const int n = s_.n;
  const double a0 = coeffs_.a0, a1 = coeffs_.a1, a2 = coeffs_.a2;
  const bool both = nonzero(a0) && nonzero(a1);
  const ComponentTensor phi = make_phi(n);
  const RicciClassification rc = classify_ricci(b_.ricci, b_.metric, tol_);

  const bool flat = b_.G.max_abs() <= tol_;
  const Check gs = check_phiGS(b_.G, phi, tol_, PhiGSMode::Components);
  const Check gs_contract = check_phiGS(b_.G, phi, tol_, PhiGSMode::Contraction);
  const ConstantFit ghs_fit = check_constant_GPhiHS(b_.G, tol_);
  const GhsSampling sampled = sample_ghs(b_.G, b_.metric, phi, 100, seed_);
  const bool ghs_constant = sampled.stddev <= tol_ && sampled.max_imag <= tol_;
  const ConstantCurvatureFit cc = check_constant_generalized(b_.G, b_.metric, tol_);
  const Residuals g_norm{{"G_max_abs", b_.G.max_abs()}};

  const std::string needs = "requires a0 != 0 and a1 != 0";
  double mu_rhs = 0.0;
  if (both) mu_rhs = a1 / a0 * rc.mu;
  const double lambda_flat = both ? (a0 + 2.0 * n * a1 - 2.0 * a2 * b_.s) / a1 : 0.0;

  // Flatness against eta-Einstein conditions.
  if (both) {
    Residuals r = eta_einstein_conditions(rc, n, lambda_flat);
    r["A13"] = a13_residual(s_);
    r["A22"] = a22_residual(s_, mu_rhs);
    r["B22"] = b22_residual(s_, mu_rhs);
    const bool rhs = worst(r) <= tol_;
    r["G_max_abs"] = b_.G.max_abs();
    equivalence("3.2", "flat generalized curvature", flat, "eta-Einstein conditions", rhs, r,
                "sampled instance");
    construct_flat();
  } else {
    not_applicable("3.2", needs);
  }

  // Pointwise constant GPhiHS-curvature: definition against the symmetrized fit.
  equivalence("3.4", "constant GPhiHS sampled", ghs_constant, "symmetrized block fit",
              ghs_fit.passed,
              {{"ghs_sample_stddev", sampled.stddev},
               {"ghs_sample_mean", sampled.mean},
               {"gamma_fit", ghs_fit.residual},
               {"gamma", ghs_fit.value}});

  double ghs_equality = 0.0;
  if (nonzero(a0)) {
    ghs_equality = ghs_equality_residual(s_, b_, ghs_fit.value);
    equivalence("3.5", "constant GPhiHS sampled", ghs_constant, "A22 equality",
                ghs_equality <= tol_,
                {{"A22_equality", ghs_equality}, {"ghs_sample_stddev", sampled.stddev}});
  } else {
    not_applicable("3.5", "requires a0 != 0");
  }

  equivalence("3.7", "phi-GS component list", gs.passed, "phi-GS contraction",
              gs_contract.passed,
              {{"components", gs.residual}, {"contraction", gs_contract.residual}});

  implication("3.8", flat, gs.passed, {{"G_max_abs", b_.G.max_abs()}, {"phi_gs", gs.residual}},
              "flat generalized tensor that is not phi-GS-symmetric");

  if (both) {
    const double mu9 = -(a0 + 4.0 * n * a1 - 2.0 * a2 * b_.s) / a1;
    Residuals r{{"phi_gs", gs.residual},
                {"A13", a13_residual(s_)},
                {"A22", a22_residual(s_, a1 / a0 * mu9)}};
    const bool rhs = worst(r) <= tol_;
    r["G_max_abs"] = b_.G.max_abs();
    equivalence("3.9", "flat generalized curvature", flat, "phi-GS with A conditions", rhs, r);

    Residuals r10 = eta_einstein_conditions(rc, n, lambda_flat);
    r10["B22"] = b22_residual(s_, mu_rhs);
    const bool rhs10 = worst(r10) <= tol_;
    r10["phi_gs"] = gs.residual;
    equivalence("3.10", "phi-GS-symmetric", gs.passed, "eta-Einstein conditions", rhs10, r10);
    construct_phi_gs();

    Residuals r11 = eta_einstein_conditions(rc, n, lambda_flat);
    r11["B22"] = b22_residual(s_, mu_rhs);
    r11["A22_equality"] = ghs_equality;
    const bool rhs11 = worst(r11) <= tol_;
    r11["phi_gs"] = gs.residual;
    r11["ghs_sample_stddev"] = sampled.stddev;
    equivalence("3.11", "phi-GS and constant GPhiHS", gs.passed && ghs_constant,
                "eta-Einstein and A22 conditions", rhs11, r11);
  } else {
    for (const char* id : {"3.9", "3.10", "3.11"}) not_applicable(id, needs);
  }

  // Conharmonic flatness under constant generalized curvature 2 a2 s.
  {
    const bool hypothesis = cc.passed && std::abs(cc.value - 2.0 * a2 * b_.s) <= tol_;
    if (!hypothesis) {
      not_applicable("4.2", "instance is not of constant generalized curvature 2 a2 s");
    } else {
      const bool k_flat = b_.K.max_abs() <= tol_;
      const bool coeff = std::abs(a0 - 1.0) <= tol_ && std::abs(a1 + 1.0 / (2.0 * n - 1.0)) <= tol_;
      equivalence("4.2", "flat conharmonic", k_flat, "a0 = 1 and a1 = -1/(2n-1)", coeff,
                  {{"K_max_abs", b_.K.max_abs()}, {"kappa_fit", cc.residual}});
    }
  }

  equivalence("4.3", "constant generalized curvature", cc.passed, "component families",
              cc.components.passed,
              {{"kappa_fit", cc.residual},
               {"kappa_components_fit", cc.components.residual},
               {"kappa", cc.value}});

  equivalence("4.4", "phi-GS-symmetric", gs.passed, "constant generalized curvature 0",
              cc.passed && std::abs(cc.value) <= tol_,
              {{"phi_gs", gs.residual}, {"kappa_fit", cc.residual}, {"kappa", cc.value}});

  implication("4.5", cc.passed, ghs_fit.passed && std::abs(ghs_fit.value - cc.value) <= tol_,
              {{"kappa_fit", cc.residual},
               {"gamma_fit", ghs_fit.residual},
               {"gamma_minus_kappa", ghs_fit.value - cc.value}},
              "constant generalized curvature without gamma = kappa");

  if (both) {
    const double lambda6 = (a0 + 2.0 * n * a1 - 2.0 * a2 * b_.s + cc.value) / a1;
    Residuals r = eta_einstein_conditions(rc, n, lambda6);
    r["A13"] = a13_residual(s_);
    r["A22"] = a22_residual(s_, mu_rhs);
    r["B22"] = b22_residual(s_, mu_rhs);
    const bool rhs = worst(r) <= tol_;
    r["kappa_fit"] = cc.residual;
    equivalence("4.6", "constant generalized curvature", cc.passed, "eta-Einstein conditions",
                rhs, r);
    construct_constant_curvature();
  } else {
    not_applicable("4.6", needs);
  }

  {
    const DependentIdentity dep = check_dependent_identity(b_, tol_);
    Residuals r{{"identity", dep.identity_residual},
                {"alpha_form", dep.alpha_form_residual},
                {"scalar_constraint", dep.scalar_constraint}};
    bool conclusion = dep.scalar_constraint <= tol_;
    if (dep.einstein_residual) {
      r["einstein"] = *dep.einstein_residual;
      conclusion = conclusion && *dep.einstein_residual <= tol_;
    }
    if (dep.kenmotsu_scalar_residual) {
      r["kenmotsu_scalar"] = *dep.kenmotsu_scalar_residual;
      conclusion = conclusion && *dep.kenmotsu_scalar_residual <= tol_;
    }
    if (!nonzero(dep.alpha)) {
      not_applicable("4.7", "requires alpha != 0");
      report_.audit["4.7"].residuals = r;
    } else {
      implication("4.7", dep.holds, conclusion, r,
                  "dependent identity holds without its Einstein consequences");
    }
  }

  not_applicable("5.4", "needs hypersurface data; run the hypersurface command");

  report_.residuals["ghs_equality"] = ghs_equality;
  return report_;
}

}  // namespace

ClassificationReport audit_theorems(const StructureData& s, const CoefficientTriple& coeffs,
                                    double tol, std::uint64_t sample_seed) {
  check_shapes(s);
  return Auditor(s, coeffs, tol, sample_seed).run();
}

}  // namespace agcurv
