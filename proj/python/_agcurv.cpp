#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "agcurv/classify.hpp"
#include "agcurv/constructions.hpp"
#include "agcurv/io.hpp"

namespace py = pybind11;
using namespace agcurv;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

py::array to_numpy(const DenseArray& a) {
  std::vector<py::ssize_t> shape(a.rank(), a.extent());
  CArray out(shape);
  std::copy(a.values().begin(), a.values().end(), out.mutable_data());
  return out;
}

DenseArray from_numpy(const py::handle& obj, const std::string& name) {
  const CArray arr = CArray::ensure(obj);
  if (!arr) throw InputError(name + ": expected a complex array");
  const int rank = static_cast<int>(arr.ndim());
  const int extent = rank == 0 ? 1 : static_cast<int>(arr.shape(0));
  for (int r = 0; r < rank; ++r)
    if (arr.shape(r) != extent) throw InputError(name + ": expected equal extents on every axis");
  DenseArray out(extent, rank);
  std::copy(arr.data(), arr.data() + arr.size(), out.values().begin());
  return out;
}

// Python objects go through the JSON codecs so validation and error paths match the CLI.
py::object json_to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Json py_to_json(const py::handle& obj) {
  return Json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

const char* const kStructureFields[] = {"B3u",       "B3d",       "A22",       "A13",
                                        "A31",       "B22",       "B31",       "A22_lower",
                                        "A13_lower", "A31_lower", "B22_lower", "B31_lower"};

py::dict structure_to_py(const StructureData& s) {
  py::dict d;
  const DenseArray* arrays[] = {&s.B3u,       &s.B3d,       &s.A22,       &s.A13,
                                &s.A31,       &s.B22,       &s.B31,       &s.A22_lower,
                                &s.A13_lower, &s.A31_lower, &s.B22_lower, &s.B31_lower};
  for (std::size_t i = 0; i < std::size(kStructureFields); ++i)
    d[kStructureFields[i]] = to_numpy(*arrays[i]);
  return d;
}

StructureData structure_from_py(int n, const py::dict& d, bool enforce_conjugate_pairs) {
  Json j = Json::object();
  for (const char* name : kStructureFields) {
    if (!d.contains(name)) continue;
    j[name] = array_to_json(from_numpy(d[name], std::string("structure.") + name));
  }
  ManifestOptions options;
  options.enforce_conjugate_pairs = enforce_conjugate_pairs;
  return structure_from_json(j, n, options);
}

CoefficientTriple coeffs_from(const std::tuple<double, double, double>& c) {
  return {std::get<0>(c), std::get<1>(c), std::get<2>(c)};
}

py::dict bundle_to_py(const CurvatureBundle& b) {
  py::dict d;
  d["n"] = b.n;
  d["R"] = to_numpy(b.R4);
  d["R_mixed"] = to_numpy(b.Rmixed);
  d["ricci"] = to_numpy(b.ricci);
  d["Q"] = to_numpy(b.Q);
  d["s"] = b.s;
  d["G"] = to_numpy(b.G);
  d["P"] = to_numpy(b.P);
  d["C"] = to_numpy(b.C);
  d["K"] = to_numpy(b.K);
  d["completion_conflict"] = b.completion_conflict;
  return d;
}

}  // namespace

PYBIND11_MODULE(_agcurv, m) {
  m.doc() = "Curvature of Kenmotsu-type almost contact metric manifolds";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<TensorError>(m, "TensorError", PyExc_ValueError);
  py::register_exception<CompletionError>(m, "CompletionError", PyExc_RuntimeError);

  m.attr("SCHEMA") = kSchema;
  m.def("default_tolerance", &default_tolerance);

  m.def("zero_structure", [](int n) { return structure_to_py(zero_structure(n)); }, py::arg("n"));
  m.def(
      "random_admissible",
      [](int n, std::uint64_t seed, double scale) {
        return structure_to_py(random_admissible(n, seed, scale));
      },
      py::arg("n"), py::arg("seed"), py::arg("scale") = 1.0);

  m.def(
      "validate",
      [](int n, const py::dict& s, double tol, bool enforce) {
        return json_to_py(admissibility_to_json(
            validate_admissible(structure_from_py(n, s, enforce), tol)));
      },
      py::arg("n"), py::arg("structure"), py::arg("tol") = kDefaultTolerance,
      py::arg("enforce_conjugate_pairs") = true);

  m.def(
      "build",
      [](int n, const py::dict& s, std::tuple<double, double, double> c, double tol) {
        return bundle_to_py(
            build_bundle(structure_from_py(n, s, true), coeffs_from(c), {tol, false, true}));
      },
      py::arg("n"), py::arg("structure"), py::arg("coeffs") = std::make_tuple(1.0, 0.0, 0.0),
      py::arg("tol") = kDefaultTolerance);

  m.def(
      "classify",
      [](int n, const py::dict& s, std::tuple<double, double, double> c, double tol,
         std::uint64_t seed) {
        const CurvatureBundle b =
            build_bundle(structure_from_py(n, s, true), coeffs_from(c), {tol, false, false});
        return json_to_py(classification_to_json(classify(b, tol, seed)));
      },
      py::arg("n"), py::arg("structure"), py::arg("coeffs") = std::make_tuple(1.0, 0.0, 0.0),
      py::arg("tol") = kDefaultTolerance, py::arg("seed") = 0);

  m.def(
      "audit",
      [](int n, const py::dict& s, std::tuple<double, double, double> c, double tol,
         std::uint64_t seed) {
        return json_to_py(classification_to_json(
            audit_theorems(structure_from_py(n, s, true), coeffs_from(c), tol, seed)));
      },
      py::arg("n"), py::arg("structure"), py::arg("coeffs") = std::make_tuple(1.0, 0.0, 0.0),
      py::arg("tol") = kDefaultTolerance, py::arg("seed") = 0);

  m.def(
      "audit_batch",
      [](int n, std::size_t trials, std::uint64_t seed,
         std::optional<std::tuple<double, double, double>> c, double tol) {
        std::optional<CoefficientTriple> fixed;
        if (c) fixed = coeffs_from(*c);
        return json_to_py(run_audit_batch(n, trials, seed, fixed, tol).report);
      },
      py::arg("n"), py::arg("trials"), py::arg("seed"), py::arg("coeffs") = py::none(),
      py::arg("tol") = kDefaultTolerance);

  m.def(
      "ghs_value",
      [](const py::handle& G, const py::handle& X) {
        const DenseArray g = from_numpy(G, "G");
        const int n = (g.extent() - 1) / 2;
        ComponentTensor Gt = ComponentTensor::lower(n, 4);
        std::copy(g.values().begin(), g.values().end(), Gt.values().begin());
        const DenseArray x = from_numpy(X, "X");
        ComponentTensor Xt = ComponentTensor::upper(n, 1);
        if (x.size() != Xt.size()) throw InputError("X: expected 2n+1 components");
        std::copy(x.values().begin(), x.values().end(), Xt.values().begin());
        return ghs_value(Gt, make_metric(n), make_phi(n), Xt);
      },
      py::arg("G"), py::arg("X"));

  m.def(
      "load_manifest",
      [](const std::string& path) {
        const Manifest mf = load_manifest(path);
        py::dict d;
        d["n"] = mf.n;
        d["coefficients"] =
            py::make_tuple(mf.coefficients.a0, mf.coefficients.a1, mf.coefficients.a2);
        d["tolerance"] = mf.options.tolerance;
        d["structure"] = structure_to_py(mf.structure);
        return d;
      },
      py::arg("path"));

  m.def(
      "consistent_hypersurface",
      [](int n, std::uint64_t seed) {
        HypersurfaceInput h;
        h.data = consistent_hypersurface(n, seed);
        return json_to_py(hypersurface_to_json(h));
      },
      py::arg("n"), py::arg("seed"));

  m.def(
      "extract_sigma",
      [](const py::object& hypersurface, double tol) {
        const HypersurfaceInput h = hypersurface_from_json(py_to_json(hypersurface));
        return json_to_py(sigma_report_to_json(extract_sigma(h.data, tol)));
      },
      py::arg("hypersurface"), py::arg("tol") = kDefaultTolerance);
}
