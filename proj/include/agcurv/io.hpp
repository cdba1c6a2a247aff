#pragma once

// Manifest and report JSON. Complex values are [re, im] pairs; arrays nest in
// the index order documented on each field.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "agcurv/classify.hpp"
#include "agcurv/curvature.hpp"
#include "agcurv/hypersurface.hpp"
#include "agcurv/structure.hpp"

namespace agcurv {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "agcurv/1";

/// Malformed input; the message starts with the JSON path of the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ManifestOptions {
  double tolerance = kDefaultTolerance;
  bool enforce_conjugate_pairs = true;
};

struct HypersurfaceInput {
  HypersurfaceData data;
  std::optional<FrameChange> frame;
  std::optional<DenseArray> curvature;  // R~^q_{rst}, extent of the frame change
};

struct Manifest {
  int n = 0;
  StructureData structure;
  CoefficientTriple coefficients;
  ManifestOptions options;
  std::optional<HypersurfaceInput> hypersurface;
};

/// AGCURV_TOLERANCE if set and positive, else 1e-9.
double default_tolerance();

Json complex_to_json(Complex z);
Json array_to_json(const DenseArray& a);
/// Decodes a nested array of the given shape; `path` prefixes error messages.
DenseArray array_from_json(const Json& j, int extent, int rank, const std::string& path);

Json structure_to_json(const StructureData& s);
StructureData structure_from_json(const Json& j, int n, const ManifestOptions& options,
                                  const std::string& path = "structure");

Json hypersurface_to_json(const HypersurfaceInput& h);
HypersurfaceInput hypersurface_from_json(const Json& j, const std::string& path = "hypersurface");

Json manifest_to_json(const Manifest& m);
Manifest manifest_from_json(const Json& j);
Manifest load_manifest(const std::string& path);
void save_manifest(const Manifest& m, const std::string& path);

/// FNV-1a 64-bit digest, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

Json coefficients_to_json(const CoefficientTriple& c);
Json admissibility_to_json(const AdmissibilityReport& r);
Json bundle_summary(const CurvatureBundle& b);
Json finding_to_json(const Finding& f);
Json classification_to_json(const ClassificationReport& r);
ClassificationReport classification_from_json(const Json& j);
Json sigma_report_to_json(const SigmaReport& r);

enum class TrialKind { Random, Flat, ConstantCurvature, PhiGSWitness, ConstantGhs };
const char* to_string(TrialKind k);

struct Trial {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  TrialKind kind = TrialKind::Random;
  StructureData structure;
  CoefficientTriple coeffs;
};

/// Trial `index` of a seeded batch: seed + index drives every draw and the
/// kinds cycle random, flat, constant-curvature, phi-GS witness, constant GPhiHS.
/// Fixed coefficients are used when given; a kind the coefficients do not
/// support falls back to a random instance.
Trial generate_trial(int n, std::uint64_t seed, std::size_t index,
                     const std::optional<CoefficientTriple>& coeffs = std::nullopt);

struct BatchResult {
  Json report;
  bool internal_failure = false;  // an engine consistency entry failed
};

BatchResult run_audit_batch(int n, std::size_t trials, std::uint64_t seed,
                            const std::optional<CoefficientTriple>& coeffs, double tol);

}  // namespace agcurv
