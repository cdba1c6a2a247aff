#include <gtest/gtest.h>

#include <random>

#include "agcurv/completion.hpp"
#include "agcurv/tensor.hpp"

using namespace agcurv;

namespace {

const Complex I(0.0, 1.0);

ComponentTensor random_tensor(int n, std::vector<Variance> v, std::uint64_t seed) {
  ComponentTensor t(n, std::move(v));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  for (Complex& z : t.values()) z = {d(rng), d(rng)};
  return t;
}

}  // namespace

TEST(Hat, Involution) {
  for (int n = 1; n <= 4; ++n)
    for (int i = 0; i <= 2 * n; ++i) EXPECT_EQ(hat(hat(i, n), n), i);
  EXPECT_EQ(hat(0, 3), 0);
  EXPECT_EQ(hat(1, 2), 3);
  EXPECT_EQ(hat(4, 2), 2);
}

TEST(Metric, Components) {
  const Metric m = make_metric(2);
  EXPECT_EQ(m.g(0, 0), Complex(1.0));
  EXPECT_EQ(m.g(3, 1), Complex(1.0));
  EXPECT_EQ(m.g(1, 3), Complex(1.0));
  EXPECT_EQ(m.g(1, 0), Complex(0.0));
  EXPECT_EQ(m.g(2, 0), Complex(0.0));
  EXPECT_EQ(m.g(1, 2), Complex(0.0));
  EXPECT_EQ(m.g(3, 4), Complex(0.0));
  EXPECT_EQ(m.g(3, 2), Complex(0.0));
}

TEST(Metric, InverseIsInverse) {
  for (int n = 1; n <= 4; ++n) {
    const Metric m = make_metric(n);
    for (int i = 0; i <= 2 * n; ++i)
      for (int j = 0; j <= 2 * n; ++j) {
        Complex sum = 0.0;
        for (int k = 0; k <= 2 * n; ++k) sum += m.g(i, k) * m.ginv(k, j);
        EXPECT_NEAR(std::abs(sum - Complex(i == j ? 1.0 : 0.0)), 0.0, 1e-15);
      }
  }
}

TEST(Phi, Components) {
  const ComponentTensor phi = make_phi(1);
  EXPECT_EQ(phi(1, 1), I);
  EXPECT_EQ(phi(2, 2), -I);
  for (int n = 1; n <= 3; ++n) {
    const ComponentTensor p = make_phi(n);
    for (int i = 0; i <= 2 * n; ++i) EXPECT_EQ(p(i, 0), Complex(0.0));
  }
}

TEST(Phi, SquareIsMinusIdentityOnKernel) {
  const int n = 3;
  const ComponentTensor phi = make_phi(n);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> d;
  std::vector<Complex> X(2 * n + 1, 0.0);
  for (int i = 1; i <= 2 * n; ++i) X[i] = {d(rng), d(rng)};
  for (int i = 0; i <= 2 * n; ++i) {
    Complex v = 0.0;
    for (int j = 0; j <= 2 * n; ++j)
      for (int k = 0; k <= 2 * n; ++k) v += phi(i, j) * phi(j, k) * X[k];
    EXPECT_NEAR(std::abs(v + X[i]), 0.0, 1e-14);
  }
}

TEST(Alternation, HalfWeightOnPair) {
  const int n = 2;
  ComponentTensor t(n, {Variance::Upper, Variance::Upper, Variance::Lower, Variance::Lower});
  for (int a = 0; a <= 2 * n; ++a)
    for (int b = 0; b <= 2 * n; ++b) t(a, b, a, b) = 1.0;
  const ComponentTensor anti = antisymmetrize(t, std::vector<int>{2, 3});
  EXPECT_DOUBLE_EQ(anti(1, 2, 1, 2).real(), 0.5);
  EXPECT_DOUBLE_EQ(anti(1, 2, 2, 1).real(), -0.5);
}

TEST(Alternation, SymmetricInputVanishes) {
  const ComponentTensor r = random_tensor(2, {Variance::Lower, Variance::Lower}, 3);
  const ComponentTensor sym = symmetrize(r, std::vector<int>{0, 1});
  EXPECT_LT(antisymmetrize(sym, std::vector<int>{0, 1}).max_abs(), 1e-15);
  const ComponentTensor anti = antisymmetrize(r, std::vector<int>{0, 1});
  EXPECT_LT(symmetrize(anti, std::vector<int>{0, 1}).max_abs(), 1e-15);
}

TEST(Alternation, ThreeSlotsOverOneValue) {
  DenseArray t(1, 3);
  t(0, 0, 0) = {2.0, -1.0};
  EXPECT_EQ(antisymmetrize(t, {0, 1, 2}).max_abs(), 0.0);
}

TEST(Alternation, RankTwoSymmetrizeIsHalfSum) {
  const ComponentTensor r = random_tensor(2, {Variance::Lower, Variance::Lower}, 11);
  const ComponentTensor sym = symmetrize(r, std::vector<int>{0, 1});
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) EXPECT_NEAR(std::abs(sym(i, j) - 0.5 * (r(i, j) + r(j, i))), 0.0, 1e-15);
}

TEST(Alternation, DeltaTildeInvariant) {
  const int n = 3;
  DenseArray dt(n, 4);
  for (int a = 0; a < n; ++a)
    for (int d = 0; d < n; ++d)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          dt(a, d, b, c) = double((a == b && d == c) + (a == c && d == b));
  EXPECT_EQ(max_abs_diff(symmetrize(dt, {0, 1}), dt), 0.0);
  EXPECT_EQ(max_abs_diff(symmetrize(dt, {2, 3}), dt), 0.0);
}

TEST(Contraction, IdentityTrace) {
  for (int n = 1; n <= 4; ++n) {
    ComponentTensor id(n, {Variance::Upper, Variance::Lower});
    for (int i = 0; i <= 2 * n; ++i) id(i, i) = 1.0;
    const ComponentTensor tr = contract(id, 0, 1);
    EXPECT_EQ(tr.rank(), 0);
    EXPECT_DOUBLE_EQ(tr.values()[0].real(), 2.0 * n + 1.0);
  }
}

TEST(Contraction, LoweringMatchesHatRule) {
  const int n = 2;
  const Metric m = make_metric(n);
  const ComponentTensor R = random_tensor(
      n, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower}, 17);
  const ComponentTensor low = lower_index(R, 0, m);
  for (int i = 0; i <= 2 * n; ++i)
    for (int j = 0; j <= 2 * n; ++j)
      for (int k = 0; k <= 2 * n; ++k)
        for (int l = 0; l <= 2 * n; ++l) {
          Complex explicit_sum = 0.0;
          for (int p = 0; p <= 2 * n; ++p) explicit_sum += m.g(i, p) * R(p, j, k, l);
          EXPECT_NEAR(std::abs(low(i, j, k, l) - explicit_sum), 0.0, 1e-14);
          EXPECT_NEAR(std::abs(low(i, j, k, l) - R(hat(i, n), j, k, l)), 0.0, 1e-14);
        }
  EXPECT_LT(max_abs_diff(raise_index(low, 0, m), R), 1e-14);
}

TEST(ConjugateComplete, FillsHatImage) {
  const int n = 2;
  ComponentTensor R(n, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower});
  R(1, 0, 1, 0) = {-1.0, 0.5};
  const ComponentTensor out = conjugate_complete(R, [&](std::span<const int> idx) {
    int h[4];
    hat_tuple(idx, h, n);
    // known: the (1,0,1,0) entry, zero elsewhere except its image
    return !(h[0] == 1 && h[1] == 0 && h[2] == 1 && h[3] == 0);
  });
  EXPECT_EQ(out(3, 0, 3, 0), Complex(-1.0, -0.5));
  EXPECT_EQ(out(1, 0, 1, 0), Complex(-1.0, 0.5));
}

TEST(ConjugateComplete, RealSelfConjugateUnchanged) {
  const int n = 1;
  ComponentTensor t(n, {Variance::Lower, Variance::Lower});
  t(0, 0) = 2.0;
  t(1, 2) = 3.0;
  t(2, 1) = 3.0;
  const ComponentTensor out = conjugate_complete(t, [](std::span<const int>) { return true; });
  EXPECT_EQ(max_abs_diff(out, t), 0.0);
}

TEST(ConjugateComplete, ConflictThrows) {
  const int n = 1;
  ComponentTensor t(n, {Variance::Lower, Variance::Lower});
  t(1, 1) = 1.0;
  t(2, 2) = 2.0;
  EXPECT_THROW(conjugate_complete(t, [](std::span<const int>) { return true; }), CompletionError);
}

TEST(ConjugateComplete, CoverageGapThrows) {
  ComponentTensor t(1, {Variance::Lower});
  EXPECT_THROW(conjugate_complete(t, [](std::span<const int>) { return false; }), CompletionError);
}

TEST(SymmetryCompletion, CurvatureOrbit) {
  const int n = 1;
  SymmetryCompletion c(ComponentTensor::lower(n, 4), curvature_symmetries());
  c.set(std::vector<int>{1, 2, 1, 2}, 3.0);
  EXPECT_TRUE(c.known(std::vector<int>{2, 1, 2, 1}));
  const ComponentTensor r = c.result();
  EXPECT_EQ(r(2, 1, 1, 2), Complex(-3.0));
  EXPECT_EQ(r(2, 1, 2, 1), Complex(3.0));
  EXPECT_THROW(c.set(std::vector<int>{2, 1, 1, 2}, 1.0), CompletionError);
}

TEST(DenseArray, ShapeErrors) {
  DenseArray a(2, 2);
  EXPECT_THROW(a(0, 2), TensorError);
  EXPECT_THROW(a(0, 0, 0), TensorError);
}
