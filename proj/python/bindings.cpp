// Python bindings. Structured results cross the boundary as JSON text and are
// decoded in the pure-Python wrapper.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinmod/io.hpp"
#include "spinmod/verify.hpp"

namespace py = pybind11;
using namespace spinmod;

namespace {

json axioms_json(const AxiomReport& r) {
  return {{"premodular", r.premodular},
          {"modular", r.modular},
          {"transparent", r.transparent},
          {"smatrix_rank", r.smatrix_rank},
          {"criteria_agree", r.criteria_agree},
          {"violations", r.violations}};
}

}  // namespace

PYBIND11_MODULE(_spinmod, m) {
  m.doc() = "Exact refined quantum invariants of plumbed 3-manifolds";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_ValueError);

  m.def("category_json", [](const std::string& source) { return category_to_json(load_category(source)).dump(); },
        py::arg("source"));
  m.def("check_axioms", [](const std::string& source) { return axioms_json(check_axioms(load_category(source))).dump(); },
        py::arg("source"));
  m.def(
      "invariant",
      [](const std::string& category, const std::string& forest_text, const std::string& refine, int d, int e_d,
         bool override_hypotheses) {
        PlumbingForest f;
        try {
          f = parse_forest(forest_text);
        } catch (const std::invalid_argument& e) {
          throw InputError(e.what());
        }
        InvariantRequest req{refine, d, e_d, override_hypotheses, CosetRoute::Factored};
        py::gil_scoped_release release;
        return compute_invariant(load_category(category), f, req).document.dump();
      },
      py::arg("category"), py::arg("forest"), py::arg("refine") = "", py::arg("d") = 0, py::arg("e_d") = 1,
      py::arg("override") = false);
  m.def(
      "structures",
      [](const std::string& kind, const IntMatrix& L, long d) {
        return structures_to_json(structure_set(parse_structure_kind(kind), L, d)).dump();
      },
      py::arg("kind"), py::arg("matrix"), py::arg("d"));
  m.def(
      "signature",
      [](const IntMatrix& L) {
        SignaturePair s = signature(L);
        return py::make_tuple(s.b_plus, s.b_minus, s.nullity);
      },
      py::arg("matrix"));
  m.def(
      "moo",
      [](const IntMatrix& L, int m_, int xi_order, long xi_power) {
        InvariantValue v = moo(L, {m_, make_root(xi_order, xi_power), std::nullopt});
        return value_to_json(v).dump();
      },
      py::arg("matrix"), py::arg("m"), py::arg("xi_order"), py::arg("xi_power") = 1);
  m.def(
      "verify",
      [](const std::string& suite, const std::string& category, int corpus_size, uint64_t seed) {
        CorpusOptions co;
        co.random_count = corpus_size;
        co.seed = seed;
        py::gil_scoped_release release;
        auto corpus = make_corpus(co);
        SuiteReport rep;
        if (suite == "sum") rep = verify_sum(load_category(category), corpus);
        else if (suite == "lemmas") rep = verify_lemmas(load_category(category));
        else if (suite == "decomposition") rep = verify_decomposition(load_category(category), corpus);
        else if (suite == "moo") rep = verify_moo();
        else throw InputError("suite `" + suite + "` is available from the command line only");
        return rep.to_json().dump();
      },
      py::arg("suite"), py::arg("category") = "", py::arg("corpus_size") = 10, py::arg("seed") = 7);
}
