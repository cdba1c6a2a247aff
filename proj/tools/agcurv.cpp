#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "agcurv/classify.hpp"
#include "agcurv/constructions.hpp"
#include "agcurv/io.hpp"

using namespace agcurv;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

struct Common {
  std::string out;
  double tolerance = 0.0;  // 0: manifest or environment default
  bool timings = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Write the report to this file instead of stdout");
  cmd->add_option("--tolerance", c.tolerance, "Residual tolerance")->check(CLI::PositiveNumber);
  cmd->add_flag("--timings", c.timings, "Include wall-clock timings in the report");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  Manifest manifest;
  std::string hash;
};

Loaded load(const std::string& path, const Common& c) {
  const std::string bytes = read_file(path);
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": parse error: " + e.what());
  }
  Loaded l{manifest_from_json(j), fnv1a_hex(bytes)};
  if (c.tolerance > 0.0) l.manifest.options.tolerance = c.tolerance;
  return l;
}

Json header(const char* command, const Loaded& l) {
  return {{"schema", kSchema},
          {"command", command},
          {"input_hash", l.hash},
          {"n", l.manifest.n},
          {"coefficients", coefficients_to_json(l.manifest.coefficients)},
          {"tolerance", l.manifest.options.tolerance}};
}

void emit(const Json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError(out + ": cannot write file");
  f << text;
}

std::optional<CoefficientTriple> parse_coeffs(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  if (v.size() != 3) throw InputError("--coeffs: expected three values a0 a1 a2");
  return CoefficientTriple{v[0], v[1], v[2]};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature engine for Kenmotsu-type almost contact metric manifolds"};
  app.require_subcommand(1, 1);

  Common common;
  std::string manifest_path;
  std::uint64_t seed = 0;
  std::size_t trials = 10;
  int n = 2;
  double scale = 1.0;
  std::vector<double> coeffs;
  std::string kind = "random";

  auto* validate = app.add_subcommand("validate", "Admissibility residuals of a manifest");
  auto* build = app.add_subcommand("build", "Curvature bundle of a manifest");
  auto* classify_cmd = app.add_subcommand("classify", "Classification flags and constants");
  auto* audit = app.add_subcommand("audit", "Theorem audit of a manifest or of seeded trials");
  auto* hyper = app.add_subcommand("hypersurface", "Second form extraction and frame transport");
  auto* gen = app.add_subcommand("gen", "Write a generated manifest");

  for (auto* cmd : {validate, build, classify_cmd, hyper}) {
    cmd->add_option("manifest", manifest_path, "Manifest JSON file")->required();
    add_common(cmd, common);
  }
  classify_cmd->add_option("--seed", seed, "Seed for the GPhiHS sampling");

  audit->add_option("manifest", manifest_path, "Manifest JSON file (omit to generate trials)");
  audit->add_option("--trials", trials, "Number of generated trials");
  audit->add_option("--seed", seed, "Base seed; trial i uses seed + i");
  audit->add_option("--n", n, "Dimension parameter of generated trials")->check(CLI::Range(1, 8));
  audit->add_option("--coeffs", coeffs, "Fixed coefficients a0 a1 a2")->expected(3);
  add_common(audit, common);

  gen->add_option("--n", n, "Dimension parameter")->check(CLI::Range(1, 8));
  gen->add_option("--seed", seed, "Seed");
  gen->add_option("--scale", scale, "Entry magnitude bound")->check(CLI::NonNegativeNumber);
  gen->add_option("--coeffs", coeffs, "Coefficients a0 a1 a2")->expected(3);
  gen->add_option("--kind", kind, "random, flat, constant-curvature, phi-gs-witness, "
                                  "constant-gphihs or zero");
  gen->add_option("--out", common.out, "Output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  auto finish = [&](Json report) {
    if (common.timings)
      report["timings"] = {{"total_ms", std::chrono::duration<double, std::milli>(
                                            std::chrono::steady_clock::now() - start)
                                            .count()}};
    emit(report, common.out);
  };

  try {
    if (*validate) {
      const Loaded l = load(manifest_path, common);
      const AdmissibilityReport r =
          validate_admissible(l.manifest.structure, l.manifest.options.tolerance);
      Json report = header("validate", l);
      report["admissibility"] = admissibility_to_json(r);
      finish(report);
      return r.admissible() ? kOk : kCheckFailed;
    }

    if (*build) {
      const Loaded l = load(manifest_path, common);
      const double tol = l.manifest.options.tolerance;
      const AdmissibilityReport r = validate_admissible(l.manifest.structure, tol);
      const CurvatureBundle b =
          build_bundle(l.manifest.structure, l.manifest.coefficients, {tol, false, false});
      Json report = header("build", l);
      report["admissibility"] = admissibility_to_json(r);
      report["bundle"] = bundle_summary(b);
      finish(report);
      return r.admissible() && b.completion_conflict <= tol ? kOk : kCheckFailed;
    }

    if (*classify_cmd) {
      const Loaded l = load(manifest_path, common);
      const double tol = l.manifest.options.tolerance;
      const CurvatureBundle b =
          build_bundle(l.manifest.structure, l.manifest.coefficients, {tol, false, false});
      Json report = header("classify", l);
      report["bundle"] = bundle_summary(b);
      report["classification"] = classification_to_json(classify(b, tol, seed));
      finish(report);
      return kOk;
    }

    if (*audit) {
      if (!manifest_path.empty()) {
        const Loaded l = load(manifest_path, common);
        const double tol = l.manifest.options.tolerance;
        const ClassificationReport r =
            audit_theorems(l.manifest.structure, l.manifest.coefficients, tol, seed);
        Json report = header("audit", l);
        report["classification"] = classification_to_json(r);
        finish(report);
        for (const char* id : {"2.5", "2.6", "3.1"})
          if (r.audit.at(id).verdict == Verdict::Fail) return kCheckFailed;
        return kOk;
      }
      const double tol = common.tolerance > 0.0 ? common.tolerance : default_tolerance();
      const BatchResult result = run_audit_batch(n, trials, seed, parse_coeffs(coeffs), tol);
      finish(result.report);
      return result.internal_failure ? kCheckFailed : kOk;
    }

    if (*hyper) {
      const Loaded l = load(manifest_path, common);
      if (!l.manifest.hypersurface) throw InputError("hypersurface: missing required section");
      const double tol = l.manifest.options.tolerance;
      const HypersurfaceInput& h = *l.manifest.hypersurface;
      const SigmaReport sigma = extract_sigma(h.data, tol);
      Json report = header("hypersurface", l);
      report["second_form"] = sigma_report_to_json(sigma);
      report["kenmotsu_hypersurface"] = {
          {"verdict", sigma.consistent() ? "pass" : "not-applicable"},
          {"note", sigma.consistent()
                       ? "matching system holds; second form follows the closed forms"
                       : "matching system violated; ambient data admits no Kenmotsu-type "
                         "hypersurface"}};
      bool ok = sigma.consistent();
      if (h.frame) {
        Json transport = {{"condition_number", h.frame->condition}};
        if (h.curvature) {
          const DenseArray ambient = transform_curvature(*h.curvature, *h.frame);
          const double round_trip =
              max_abs_diff(transform_curvature(ambient, h.frame->inverse()), *h.curvature);
          transport["ambient_curvature"] = array_to_json(ambient);
          transport["round_trip_residual"] = round_trip;
          ok = ok && round_trip <= 1e-9;
        }
        report["transport"] = transport;
      }
      const ProductStructureCheck pc =
          product_complex_structure_check(l.manifest.n, 100, 0);
      report["product_structure"] = {{"j_squared", pc.j_squared},
                                     {"compatibility", pc.compatibility},
                                     {"samples", pc.samples}};
      ok = ok && pc.j_squared <= 1e-12 && pc.compatibility <= 1e-12;
      finish(report);
      return ok ? kOk : kCheckFailed;
    }

    if (*gen) {
      Manifest m;
      m.n = n;
      m.options.tolerance = default_tolerance();
      const auto fixed = parse_coeffs(coeffs);
      if (fixed) m.coefficients = *fixed;
      if (kind == "random") {
        m.structure = random_admissible(n, seed, scale);
      } else if (kind == "zero") {
        m.structure = zero_structure(n);
      } else {
        const TrialKind kinds[] = {TrialKind::Random, TrialKind::Flat,
                                   TrialKind::ConstantCurvature, TrialKind::PhiGSWitness,
                                   TrialKind::ConstantGhs};
        std::size_t index = 0;
        while (index < 5 && kind != to_string(kinds[index])) ++index;
        if (index == 5) throw InputError("--kind: unknown kind " + kind);
        const Trial t = generate_trial(n, seed, index, fixed);
        if (t.kind != kinds[index])
          throw InputError("--kind: " + kind + " is not constructible for these coefficients");
        m.structure = t.structure;
        m.coefficients = t.coeffs;
      }
      Json j = manifest_to_json(m);
      emit(j, common.out);
      return kOk;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const TensorError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const CompletionError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kInputError;
}
