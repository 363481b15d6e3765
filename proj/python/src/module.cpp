// Python bindings for the whakit core.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "whakit/actions.hpp"
#include "whakit/fixtures.hpp"
#include "whakit/io.hpp"
#include "whakit/report.hpp"

namespace py = pybind11;
using namespace whakit;

namespace {

Tolerance tolerance(double tol) { return Tolerance::uniform(tol); }

std::vector<Mat> structure_constants(const WeakHopfAlgebra& h) {
  std::vector<Mat> out;
  for (int i = 0; i < h.dim(); ++i) out.push_back(h.algebra().left(i));
  return out;
}

std::vector<int> block_sizes(const FinDimAlgebra& a, double tol) {
  std::vector<int> out;
  for (const Block& b : block_decomposition(a, tolerance(tol)).blocks) out.push_back(b.size);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-dimensional weak Hopf algebras";

  // The message starts with the error code, e.g. "MissingFile: cannot open ...".
  py::register_exception<Error>(m, "WhakitError");

  py::class_<WeakHopfAlgebra>(m, "WeakHopfAlgebra")
      .def_property_readonly("dim", &WeakHopfAlgebra::dim)
      .def_property_readonly("labels", [](const WeakHopfAlgebra& h) { return h.algebra().labels(); })
      .def_property_readonly("left_multiplication", &structure_constants,
                             "left_multiplication[i][k, j]: coefficient of e_k in e_i e_j")
      .def_property_readonly("unit", [](const WeakHopfAlgebra& h) { return h.algebra().unit(); })
      .def_property_readonly("comultiplication", [](const WeakHopfAlgebra& h) { return h.wba.comultiplication(); },
                             "n^2 x n matrix, row i*n + j")
      .def_property_readonly("counit", [](const WeakHopfAlgebra& h) { return h.wba.counit(); })
      .def_property_readonly("antipode", [](const WeakHopfAlgebra& h) { return h.antipode; })
      .def_property_readonly("left_subalgebra", [](const WeakHopfAlgebra& h) { return h.sub.left.basis; })
      .def_property_readonly("right_subalgebra", [](const WeakHopfAlgebra& h) { return h.sub.right.basis; })
      .def_property_readonly("indecomposable", [](const WeakHopfAlgebra& h) { return h.sub.indecomposable; })
      .def("multiply", [](const WeakHopfAlgebra& h, const Vec& a, const Vec& b) { return h.algebra().multiply(a, b); })
      .def("block_sizes", [](const WeakHopfAlgebra& h, double tol) { return block_sizes(h.algebra(), tol); },
           py::arg("tol") = 1e-9)
      .def("__repr__", [](const WeakHopfAlgebra& h) { return "<WeakHopfAlgebra dim " + std::to_string(h.dim()) + ">"; });

  m.def("fixture_kinds", &fixture_kinds);
  m.def("make_fixture", [](const std::string& kind, int param, double tol) {
    return make_fixture(kind, param, tolerance(tol));
  }, py::arg("kind"), py::arg("param") = 2, py::arg("tol") = 1e-9);
  m.def("load", [](const std::string& path, double tol) { return load_wha(path, tolerance(tol)); }, py::arg("path"),
        py::arg("tol") = 1e-9);
  m.def("loads", [](const std::string& text, double tol) { return wha_from_file(parse_wha_json(text), tolerance(tol)); },
        py::arg("text"), py::arg("tol") = 1e-9);
  m.def("dumps", [](const WeakHopfAlgebra& h, const std::string& name) { return dump_wha_json(to_file(h, name)); },
        py::arg("h"), py::arg("name") = "");
  m.def("dual", [](const WeakHopfAlgebra& h, double tol) { return dual_wha(h, tolerance(tol)); }, py::arg("h"),
        py::arg("tol") = 1e-9);

  m.def("validate", [](const WeakHopfAlgebra& h, double tol) {
    std::vector<std::tuple<std::string, double, bool>> out;
    for (const AxiomResidual& a : validate_wba(h.wba, tolerance(tol)).axioms) out.emplace_back(a.name, a.residual, a.passed);
    return out;
  }, py::arg("h"), py::arg("tol") = 1e-9, "(axiom, residual, passed) for every weak bialgebra axiom");
  m.def("validate_text", [](const std::string& text, double tol) {
    const WhaFile f = parse_wha_json(text);
    if (!f.comultiplication || !f.counit) throw Error(ErrorCode::SchemaError, "$.comultiplication: missing");
    const WeakBialgebra w(FinDimAlgebra(f.basis_labels, f.left, f.unit, f.involution), *f.comultiplication, *f.counit);
    return validate_wba(w, tolerance(tol)).ok;
  }, py::arg("text"), py::arg("tol") = 1e-9, "True iff a structure-constant document passes every axiom");
  m.def("perturb_text", [](const std::string& text, std::uint64_t seed, double magnitude) {
    return dump_wha_json(perturb(parse_wha_json(text), seed, magnitude));
  }, py::arg("text"), py::arg("seed"), py::arg("magnitude") = 1e-3);

  m.def("haar_integral", [](const WeakHopfAlgebra& h, double tol) -> std::optional<Vec> {
    const std::optional<HaarIntegral> i = haar_integral(h, tolerance(tol));
    if (!i) return std::nullopt;
    return i->h;
  }, py::arg("h"), py::arg("tol") = 1e-9);
  m.def("is_weak_kac", [](const WeakHopfAlgebra& h, double tol) { return is_weak_kac(h, tolerance(tol)); },
        py::arg("h"), py::arg("tol") = 1e-9);
  m.def("markov_index", [](const WeakHopfAlgebra& h, double tol) { return markov_index(h, tolerance(tol)).delta; },
        py::arg("h"), py::arg("tol") = 1e-9);
  m.def("analyze_json", [](const std::string& text, double tol) {
    return report_json(analyze(parse_wha_json(text), tolerance(tol)), false);
  }, py::arg("text"), py::arg("tol") = 1e-9);

  m.def("smash_product_blocks", [](const WeakHopfAlgebra& h, double tol) {
    return block_sizes(smash_product(h, tolerance(tol)).product.algebra, tol);
  }, py::arg("h"), py::arg("tol") = 1e-9, "block sizes of A # A^");
  m.def("translation_crossed_product_blocks", [](int n, double tol) {
    return block_sizes(crossed_product(translation_action(n, tolerance(tol)), tolerance(tol)).algebra, tol);
  }, py::arg("n"), py::arg("tol") = 1e-9);
}
