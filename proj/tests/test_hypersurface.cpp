#include <gtest/gtest.h>

#include <random>

#include "agcurv/hypersurface.hpp"

using namespace agcurv;

namespace {

const Complex I(0.0, 1.0);

DenseArray random_array(int extent, int rank, std::mt19937_64& rng) {
  DenseArray t(extent, rank);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (Complex& z : t.values()) z = {d(rng), d(rng)};
  return t;
}

DenseArray well_conditioned(int dim, std::mt19937_64& rng) {
  DenseArray C = random_array(dim, 2, rng);
  for (int i = 0; i < dim; ++i) C(i, i) += 4.0;
  return C;
}

}  // namespace

TEST(Sigma, ZeroAmbientIsInconsistent) {
  const int n = 3;
  const SigmaReport r = extract_sigma(zero_hypersurface(n));
  for (int a = 0; a < n - 1; ++a)
    for (int b = 0; b < n - 1; ++b)
      EXPECT_EQ(r.sigma.sigma_mixed(a, b), a == b ? I : Complex(0.0));
  ASSERT_EQ(r.relations.size(), 9u);
  EXPECT_NEAR(r.relations[6].residual, 2.0, 1e-15);
  EXPECT_FALSE(r.consistent());
}

TEST(Sigma, ClosedForms) {
  const int n = 4;
  std::mt19937_64 rng(1);
  HypersurfaceData h = zero_hypersurface(n);
  h.Ban_b = random_array(n - 1, 2, rng);
  h.Bab_n = random_array(n - 1, 2, rng);
  conjugate_lower(h);
  const SigmaReport r = extract_sigma(h);
  for (int a = 0; a < n - 1; ++a) {
    EXPECT_EQ(r.sigma.sigma_nb(a), Complex(0.0));
    EXPECT_EQ(r.sigma.sigma_n_b(a), Complex(0.0));
    for (int b = 0; b < n - 1; ++b) {
      const Complex mixed = I * (std::sqrt(2.0) * h.Ban_b(a, b) + (a == b ? 1.0 : 0.0));
      EXPECT_NEAR(std::abs(r.sigma.sigma_mixed(a, b) - mixed), 0.0, 1e-15);
      EXPECT_NEAR(std::abs(r.sigma.sigma_up(a, b) - h.Bab_n(a, b) / (I * std::sqrt(2.0))), 0.0,
                  1e-15);
      EXPECT_EQ(r.sigma.sigma_ab(a, b), Complex(0.0));
      EXPECT_EQ(r.sigma.sigma_lower_mixed(a, b), std::conj(r.sigma.sigma_mixed(a, b)));
    }
  }
}

TEST(Sigma, ConsistentAmbientData) {
  for (int n = 2; n <= 5; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const SigmaReport r = extract_sigma(consistent_hypersurface(n, seed));
      EXPECT_TRUE(r.consistent()) << "n=" << n;
      for (const Equation& e : r.relations) EXPECT_LT(e.residual, 1e-12) << e.text;
      EXPECT_LT(r.sigma_symmetry, 1e-12);
    }
}

TEST(Cartan, KenmotsuTableHasNoDOmega) {
  const CartanTable t = cartan_kenmotsu(consistent_hypersurface(3, 2));
  int rows = 0;
  for (const CartanTerm& term : t.terms)
    if (term.form == "domega") {
      ++rows;
      EXPECT_EQ(term.coefficient, "0");
      EXPECT_EQ(term.value.max_abs(), 0.0);
    }
  EXPECT_EQ(rows, 3);
}

TEST(Cartan, HermitianTableVanishesOnZeroData) {
  const HypersurfaceData h = zero_hypersurface(3);
  SecondForm sigma;
  sigma.sigma_ab = DenseArray(2, 2);
  sigma.sigma_nb = DenseArray(2, 1);
  sigma.sigma_up = DenseArray(2, 2);
  sigma.sigma_mixed = DenseArray(2, 2);
  sigma.sigma_lower_mixed = DenseArray(2, 2);
  sigma.sigma_n_b = DenseArray(2, 1);
  for (const CartanTerm& term : cartan_hermitian(h, sigma).terms)
    EXPECT_EQ(term.value.max_abs(), 0.0) << term.form << " " << term.wedge;
}

TEST(Cartan, EquateReproducesMatchingSystem) {
  const HypersurfaceData h = consistent_hypersurface(3, 4);
  const SigmaReport r = extract_sigma(h);
  const std::vector<Equation> eqs = equate(cartan_hermitian(h, r.sigma), cartan_kenmotsu(h));
  const std::vector<std::string> expected = {
      "B^{ab}_c = Bk^{ab}_c",
      "sqrt2 B^{an}_b + i sigma^a_b = -delta^a_b",
      "i sigma^{ab} - (1/sqrt2) B^{ab}_n = 0",
      "B_{ab}^c = Bk_{ab}^c",
      "sqrt2 B_{an}^b - i sigma_a^b = -delta_a^b",
      "i sigma_{ab} + (1/sqrt2) B_{ab}^n = 0",
      "sqrt2 B^{na}_b - sqrt2 B_{nb}^a - 2i sigma^a_b = 0",
      "B^n_{nb} + i sigma_{nb} = 0",
      "B_n^{nb} - i sigma_n^b = 0",
  };
  ASSERT_EQ(eqs.size(), expected.size());
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    EXPECT_EQ(eqs[i].text, expected[i]);
    EXPECT_EQ(eqs[i].text, matching_system()[i]);
  }
}

TEST(Shapes, NamesOffendingArray) {
  HypersurfaceData h = zero_hypersurface(3);
  h.Ban_b = DenseArray(3, 2);
  try {
    check_shapes(h);
    FAIL();
  } catch (const TensorError& e) {
    EXPECT_NE(std::string(e.what()).find("hypersurface.Ban_b"), std::string::npos);
  }
}

TEST(Transport, IdentityIsNoOp) {
  std::mt19937_64 rng(3);
  const DenseArray R = random_array(5, 4, rng);
  EXPECT_LT(max_abs_diff(transform_curvature(R, FrameChange::identity(5)), R), 1e-15);
}

TEST(Transport, RoundTripAndComposition) {
  std::mt19937_64 rng(11);
  double round_trip = 0.0, composition = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 3 + trial % 4;
    const DenseArray R = random_array(dim, 4, rng);
    const FrameChange F1 = FrameChange::from_matrix(well_conditioned(dim, rng));
    const FrameChange F2 = FrameChange::from_matrix(well_conditioned(dim, rng));
    ASSERT_LT(F1.condition, 1e3);
    ASSERT_LT(F2.condition, 1e3);
    const FrameChange back = FrameChange::from_pair(F1.Cinv, F1.Cmat);
    round_trip = std::max(round_trip,
                          max_abs_diff(transform_curvature(transform_curvature(R, F1), back), R));
    composition = std::max(
        composition, max_abs_diff(transform_curvature(transform_curvature(R, F1), F2),
                                  transform_curvature(R, F1.then(F2))));
  }
  EXPECT_LT(round_trip, 1e-9);
  EXPECT_LT(composition, 1e-9);
}

TEST(Transport, SingularMatrixRejected) {
  DenseArray C(3, 2);
  C(0, 0) = 1.0;
  C(1, 1) = 1.0;
  EXPECT_THROW(FrameChange::from_matrix(C), TensorError);
  DenseArray Cinv(3, 2);
  for (int i = 0; i < 3; ++i) Cinv(i, i) = 1.0;
  EXPECT_THROW(FrameChange::from_pair(Cinv, C), TensorError);
}

TEST(ProductStructure, XiAndTimeDirection) {
  const int n = 2;
  ComponentTensor xi = make_xi(n);
  auto [JX, f] = apply_product_structure(xi, 0.0);
  EXPECT_EQ(JX.max_abs(), 0.0);
  EXPECT_EQ(f, Complex(1.0));
  auto [JJX, g] = apply_product_structure(JX, f);
  EXPECT_EQ(JJX(0), Complex(-1.0));
  EXPECT_EQ(g, Complex(0.0));

  auto [JT, h] = apply_product_structure(ComponentTensor::upper(n, 1), 1.0);
  EXPECT_EQ(JT(0), Complex(-1.0));
  EXPECT_EQ(h, Complex(0.0));
}

TEST(ProductStructure, RandomSamples) {
  const ProductStructureCheck c = product_complex_structure_check(3, 100, 5);
  EXPECT_EQ(c.samples, 100u);
  EXPECT_LT(c.j_squared, 1e-12);
  EXPECT_LT(c.compatibility, 1e-12);
}
