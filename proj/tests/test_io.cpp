#include <gtest/gtest.h>

#include <cstdlib>

#include "agcurv/io.hpp"

using namespace agcurv;

namespace {

Json zero_manifest(int n) {
  Manifest m;
  m.n = n;
  m.structure = zero_structure(n);
  return manifest_to_json(m);
}

std::string error_of(const Json& j) {
  try {
    manifest_from_json(j);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

class ToleranceEnv : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv("AGCURV_TOLERANCE"); }
  void TearDown() override { unsetenv("AGCURV_TOLERANCE"); }
};

}  // namespace

TEST(Arrays, RoundTrip) {
  const StructureData s = random_admissible(2, 3);
  const DenseArray back = array_from_json(array_to_json(s.A22), 2, 4, "x");
  EXPECT_EQ(max_abs_diff(back, s.A22), 0.0);
}

TEST(Arrays, ShapeMismatchNamesPath) {
  const Json j = array_to_json(DenseArray(2, 3));
  try {
    array_from_json(j, 3, 3, "structure.B3u");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("structure.B3u", 0), 0u) << e.what();
  }
}

TEST(Manifest, MinimalZeroLoadsAndClassifies) {
  Json j = {{"n", 1}, {"coefficients", {{"a0", 1.0}, {"a1", 0.0}, {"a2", 0.0}}}};
  const StructureData z = zero_structure(1);
  j["structure"] = {{"B3u", array_to_json(z.B3u)}, {"A22", array_to_json(z.A22)},
                    {"A13", array_to_json(z.A13)}, {"A31", array_to_json(z.A31)},
                    {"B22", array_to_json(z.B22)}, {"B31", array_to_json(z.B31)}};
  const Manifest m = manifest_from_json(j);
  const ClassificationReport r = classify(build_bundle(m.structure, m.coefficients), 1e-9);
  EXPECT_TRUE(r.flags.at("einstein"));
  ASSERT_TRUE(r.lambda.has_value());
  EXPECT_NEAR(*r.lambda, -2.0, 1e-12);
}

TEST(Manifest, DeclaredDimensionMismatch) {
  Json j = zero_manifest(3);
  j["structure"]["B3u"] = array_to_json(DenseArray(2, 3));
  EXPECT_NE(error_of(j).find("structure.B3u"), std::string::npos) << error_of(j);
}

TEST_F(ToleranceEnv, OptionsDefaults) {
  Json j = zero_manifest(2);
  j.erase("options");
  const Manifest m = manifest_from_json(j);
  EXPECT_EQ(m.options.tolerance, 1e-9);
  EXPECT_TRUE(m.options.enforce_conjugate_pairs);
}

TEST_F(ToleranceEnv, EnvironmentOverride) {
  setenv("AGCURV_TOLERANCE", "1e-6", 1);
  EXPECT_EQ(default_tolerance(), 1e-6);
  Json j = zero_manifest(2);
  j.erase("options");
  EXPECT_EQ(manifest_from_json(j).options.tolerance, 1e-6);
  setenv("AGCURV_TOLERANCE", "garbage", 1);
  EXPECT_EQ(default_tolerance(), 1e-9);
  setenv("AGCURV_TOLERANCE", "-1", 1);
  EXPECT_EQ(default_tolerance(), 1e-9);
}

TEST(Manifest, ConjugateEnforcement) {
  Manifest m;
  m.n = 2;
  m.structure = random_admissible(2, 1);
  m.structure.B22_lower(0, 1, 0, 1) += 0.5;
  Json j = manifest_to_json(m);
  EXPECT_NE(error_of(j).find("structure.B22_lower"), std::string::npos);
  j["options"]["enforce_conjugate_pairs"] = false;
  const Manifest loose = manifest_from_json(j);
  EXPECT_EQ(max_abs_diff(loose.structure.B22_lower, m.structure.B22_lower), 0.0);
}

TEST(Manifest, LowerFamilyDefaultsToConjugate) {
  Manifest m;
  m.n = 2;
  m.structure = random_admissible(2, 9);
  Json j = manifest_to_json(m);
  for (const char* k : {"B3d", "A22_lower", "A13_lower", "A31_lower", "B22_lower", "B31_lower"})
    j["structure"].erase(k);
  const Manifest back = manifest_from_json(j);
  EXPECT_EQ(max_abs_diff(back.structure.B31_lower, m.structure.B31_lower), 0.0);
  EXPECT_EQ(max_abs_diff(back.structure.B3d, m.structure.B3d), 0.0);
}

TEST(Manifest, Errors) {
  Json j = zero_manifest(2);
  j["schema"] = "agcurv/0";
  EXPECT_NE(error_of(j).find("schema"), std::string::npos);
  j = zero_manifest(2);
  j["coefficients"].erase("a1");
  EXPECT_NE(error_of(j).find("coefficients.a1"), std::string::npos);
  j = zero_manifest(2);
  j["n"] = 0;
  EXPECT_EQ(error_of(j).rfind("n:", 0), 0u);
}

TEST(Manifest, FullRoundTrip) {
  Manifest m;
  m.n = 3;
  m.coefficients = {0.5, -1.5, 0.25};
  m.options.tolerance = 1e-8;
  m.structure = random_admissible(3, 4);
  HypersurfaceInput h;
  h.data = consistent_hypersurface(3, 2);
  DenseArray C(3, 2);
  for (int i = 0; i < 3; ++i) C(i, i) = 2.0;
  C(0, 1) = {0.5, 0.1};
  h.frame = FrameChange::from_matrix(C);
  m.hypersurface = h;
  const Json j = manifest_to_json(m);
  const Manifest back = manifest_from_json(Json::parse(j.dump()));
  EXPECT_EQ(manifest_to_json(back).dump(), j.dump());
  EXPECT_EQ(back.options.tolerance, 1e-8);
  ASSERT_TRUE(back.hypersurface && back.hypersurface->frame);
  EXPECT_LT(max_abs_diff(back.hypersurface->frame->Cinv, h.frame->Cinv), 1e-15);
}

TEST(Reports, ClassificationRoundTrip) {
  const ClassificationReport r = audit_theorems(random_admissible(2, 5), {1.0, 0.3, -0.1});
  const Json j = classification_to_json(r);
  const ClassificationReport back = classification_from_json(Json::parse(j.dump()));
  EXPECT_EQ(classification_to_json(back).dump(), j.dump());
}

TEST(Batch, DeterministicAndCycled) {
  const BatchResult a = run_audit_batch(2, 10, 1, std::nullopt, 1e-9);
  const BatchResult b = run_audit_batch(2, 10, 1, std::nullopt, 1e-9);
  EXPECT_EQ(a.report.dump(), b.report.dump());
  EXPECT_FALSE(a.internal_failure);
  EXPECT_EQ(generate_trial(2, 1, 3).kind, TrialKind::PhiGSWitness);
  EXPECT_EQ(generate_trial(2, 1, 6).kind, TrialKind::Flat);
  EXPECT_EQ(generate_trial(2, 1, 6).seed, 7u);
}

TEST(Hash, Fnv1a) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}
