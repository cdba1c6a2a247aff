#include <gtest/gtest.h>

#include "agcurv/curvature.hpp"

using namespace agcurv;

namespace {

double near0(Complex z) { return std::abs(z); }

}  // namespace

TEST(Riemann, XiFamily) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RiemannTensors R = build_riemann(random_admissible(2, seed));
    EXPECT_NEAR(near0(R.mixed(1, 0, 1, 0) + 1.0), 0.0, 1e-12);
    EXPECT_NEAR(near0(R.mixed(2, 0, 1, 0)), 0.0, 1e-12);
  }
}

TEST(Riemann, ZeroStructure) {
  const int n = 2;
  const RiemannTensors R = build_riemann(zero_structure(n));
  // R^a_{b^ cd} = -2 delta^a_{[c} delta^b_{d]}
  EXPECT_NEAR(near0(R.mixed(1, 2 + n, 1, 2) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(near0(R.mixed(1, 2 + n, 2, 1) - 1.0), 0.0, 1e-15);
}

TEST(Riemann, LatinFamilyVanishesWithA13) {
  StructureParameters p = random_parameters(3, 4);
  p.mixed_block = latin_array(3, 4);
  const StructureData s = assemble_structure(3, p);
  ASSERT_EQ(s.A13.max_abs(), 0.0);
  const RiemannTensors R = build_riemann(s);
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 3; ++c)
        for (int d = 1; d <= 3; ++d) EXPECT_LT(near0(R.mixed(a, b, c, d)), 1e-14);
}

TEST(Ricci, FixedComponents) {
  for (int n = 1; n <= 4; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const RicciData r = ricci_from_structure(random_admissible(n, seed));
      EXPECT_NEAR(near0(r.ricci(0, 0) + 2.0 * n), 0.0, 1e-12);
      for (int a = 1; a <= 2 * n; ++a) {
        EXPECT_NEAR(near0(r.ricci(a, 0)), 0.0, 1e-12);
        EXPECT_NEAR(near0(r.ricci(0, a)), 0.0, 1e-12);
      }
      EXPECT_NEAR(r.s_imag, 0.0, 1e-12);
    }
}

TEST(Ricci, ZeroStructure) {
  const int n = 2;
  const RicciData r = ricci_from_structure(zero_structure(n));
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      EXPECT_NEAR(near0(r.ricci(a + n, b) - (a == b ? -4.0 : 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(r.s, -20.0, 1e-14);
  for (int k = 1; k <= 4; ++k)
    EXPECT_NEAR(ricci_from_structure(zero_structure(k)).s, -2.0 * k * (2 * k + 1), 1e-13);
}

TEST(Ricci, FormulaMatchesContraction) {
  for (int n = 1; n <= 3; ++n)
    for (std::uint64_t seed = 10; seed < 15; ++seed) {
      const StructureData s = random_admissible(n, seed);
      const RiemannTensors R = build_riemann(s);
      const RicciData formula = ricci_from_structure(s);
      const RicciData contracted = ricci_from_riemann(R.lower, make_metric(n));
      EXPECT_LT(max_abs_diff(formula.ricci, contracted.ricci), 1e-10);
      EXPECT_NEAR(formula.s, contracted.s, 1e-10);
    }
}

// Reference values from tests/oracles/ricci_oracle.py on
// `agcurv gen --n 2 --seed 7 --coeffs 1.3 -0.7 0.4`.
TEST(Generalized, FrozenOracleValues) {
  const int n = 2;
  const CoefficientTriple c{1.3, -0.7, 0.4};
  const CurvatureBundle b = build_bundle(random_admissible(n, 7), c);
  EXPECT_NEAR(b.s, -16.225245003561795, 1e-10);
  EXPECT_NEAR(near0(b.ricci(1, 2) - Complex(-0.6075865149498665, 0.3062079103677684)), 0, 1e-10);
  EXPECT_NEAR(near0(b.ricci(3, 1) - Complex(-2.452783203283885, 0.0)), 0, 1e-10);
  EXPECT_NEAR(near0(b.ricci(3, 2) - Complex(-0.29720794335310424, -0.24610645093933814)), 0,
              1e-10);
  EXPECT_NEAR(near0(b.G(4, 0, 1, 0) - Complex(0.20804556034717295, -0.17227451565753668)), 0,
              1e-10);
  EXPECT_NEAR(near0(b.G(3, 2, 1, 4) - Complex(-9.526096708984205, 0.0)), 0, 1e-10);
}

TEST(Generalized, PureRiemann) {
  const StructureData s = random_admissible(2, 3);
  const CurvatureBundle b = build_bundle(s, {1.0, 0.0, 0.0});
  EXPECT_EQ(max_abs_diff(b.G, b.R4), 0.0);
  const CurvatureBundle zero = build_bundle(s, {0.0, 0.0, 0.0});
  EXPECT_EQ(zero.G.max_abs(), 0.0);
}

TEST(Generalized, LatinXiFamilyIsRicci) {
  const int n = 3;
  const CoefficientTriple c{0.8, 1.7, -0.3};
  const CurvatureBundle b = build_bundle(random_admissible(n, 21), c);
  for (int a = 1; a <= n; ++a)
    for (int d = 1; d <= n; ++d)
      EXPECT_NEAR(near0(b.G(a, 0, d, 0) - c.a1 * b.ricci(a, d)), 0.0, 1e-12);
}

TEST(Generalized, ZeroStructureHatXiFamily) {
  for (int n = 1; n <= 3; ++n) {
    const CoefficientTriple c{1.1, -0.4, 0.25};
    const CurvatureBundle b = build_bundle(zero_structure(n), c);
    const double expected = -(c.a0 + 4 * n * c.a1 - 2 * c.a2 * b.s);
    for (int a = 1; a <= n; ++a)
      for (int d = 1; d <= n; ++d)
        EXPECT_NEAR(near0(b.G(a + n, 0, d, 0) - (a == d ? expected : 0.0)), 0.0, 1e-13);
  }
}

TEST(Generalized, FormulaMatchesDefinition) {
  const CoefficientTriple c{0.7, -1.2, 0.35};
  for (int n = 1; n <= 3; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const StructureData s = random_admissible(n, seed);
      const CurvatureBundle b = build_bundle(s, c);
      const ComponentTensor Gf =
          generalized_components_formula(s, ricci_from_structure(s), c);
      EXPECT_LT(max_abs_diff(b.G, Gf), 1e-10);
    }
}

TEST(Generalized, ZeroStructurePairFamily) {
  const int n = 2;
  const CoefficientTriple c{1.0, 0.5, -0.2};
  const StructureData s = zero_structure(n);
  const CurvatureBundle b = build_bundle(s, c);
  const ComponentTensor Gf = generalized_components_formula(s, ricci_from_structure(s), c);
  // G_{a^ b^ cd} at (1,2,1,2): R gives -a0, the Ricci term -4n a1, the scalar term 2 a2 s.
  EXPECT_NEAR(near0(Gf(1 + n, 2 + n, 1, 2) - b.G(1 + n, 2 + n, 1, 2)), 0.0, 1e-14);
  EXPECT_NEAR(near0(b.G(1 + n, 2 + n, 1, 2) - (2 * c.a2 * b.s - c.a0 - 4 * n * c.a1)), 0.0, 1e-13);
}

TEST(Generalized, SymmetriesAndReality) {
  for (int n = 1; n <= 3; ++n) {
    const CurvatureBundle b = build_bundle(random_admissible(n, 30 + n), {0.9, 0.3, -0.1});
    for (const ComponentTensor* t : {&b.R4, &b.G}) {
      EXPECT_LT(last_pair_antisymmetry_residual(*t), 1e-12);
      EXPECT_LT(first_pair_antisymmetry_residual(*t), 1e-12);
      EXPECT_LT(pair_symmetry_residual(*t), 1e-12);
      EXPECT_LT(bianchi_residual(*t), 1e-12);
    }
    for (const ComponentTensor* t : {&b.R4, &b.G, &b.ricci, &b.P, &b.C, &b.K})
      EXPECT_LT(hat_reality_residual(*t, n), 1e-12);
  }
}

TEST(Classical, Degenerations) {
  const int n = 2;
  const CurvatureBundle b = build_bundle(random_admissible(n, 2), {1.0, 0.0, 0.0});
  const Metric m = make_metric(n);
  const ComponentTensor zero_r = ComponentTensor::lower(n, 2);
  EXPECT_EQ(max_abs_diff(build_classical(ClassicalKind::Projective, b.R4, zero_r, 0.0, m), b.R4),
            0.0);
  EXPECT_EQ(max_abs_diff(build_classical(ClassicalKind::Concircular, b.R4, b.ricci, 0.0, m), b.R4),
            0.0);
  EXPECT_EQ(max_abs_diff(build_classical(ClassicalKind::Conharmonic, b.R4, zero_r, 0.0, m), b.R4),
            0.0);
}

TEST(Classical, ConharmonicFlatOnKFamily) {
  // a0 = 1, a1 = -1/(2n-1): G and K differ by the scalar term only.
  const int n = 2;
  const CoefficientTriple c{1.0, -1.0 / (2 * n - 1), 0.15};
  const CurvatureBundle b = build_bundle(random_admissible(n, 40), c);
  const ComponentTensor gg = metric_square(b.metric);
  double worst = 0.0;
  for (std::size_t i = 0; i < gg.size(); ++i)
    worst = std::max(worst, std::abs(b.G.values()[i] - b.K.values()[i] -
                                     2.0 * c.a2 * b.s * gg.values()[i]));
  EXPECT_LT(worst, 1e-11);
}

TEST(Build, StrictConflictOnBrokenInstance) {
  StructureData s = random_admissible(2, 5);
  s.A13(0, 0, 1, 1) += 0.5;
  EXPECT_THROW(build_riemann(s), CompletionError);
  EXPECT_GT(build_riemann(s, {kDefaultTolerance, false, false}).completion_conflict, 0.1);
}
