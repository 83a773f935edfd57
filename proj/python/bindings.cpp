#include "equistrat/errors.hpp"
#include "equistrat/pipeline.hpp"
#include "equistrat/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace equistrat;

namespace {

Problem problem_from(const std::string& text, std::optional<std::uint64_t> seed, std::optional<int> samples) {
  ProblemSpec spec = parse_spec(text);
  if (seed) spec.options.seed = *seed;
  if (samples) spec.options.samples = *samples;
  return build_problem(spec);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Isotropy lattices, equivariant bases and zero-set strata for finite group representations";

  static py::exception<Error> error_type(m, "EquistratError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error_type.ptr(), e.what());
    }
  });

  m.def("normalize_spec", [](const std::string& text) { return serialize_spec(parse_spec(text)); },
        py::arg("text"));

  m.def("lattice_json", [](const std::string& text) {
    const Problem p = problem_from(text, std::nullopt, std::nullopt);
    return lattice_json(build_lattice(p.V, p.W));
  }, py::arg("text"));

  m.def("lattice_dot", [](const std::string& text) {
    const Problem p = problem_from(text, std::nullopt, std::nullopt);
    return lattice_to_dot(build_lattice(p.V, p.W));
  }, py::arg("text"));

  m.def("equivariant_dimension", [](const std::string& text, int degree) {
    const Problem p = problem_from(text, std::nullopt, std::nullopt);
    return equivariant_dimension(p.V, p.W, degree);
  }, py::arg("text"), py::arg("degree"));

  m.def("generator_count", [](const std::string& text, int degree) {
    const Problem p = problem_from(text, std::nullopt, std::nullopt);
    const GeneratorCount g = generator_count(p.V, p.W, degree);
    return py::dict(py::arg("trace") = g.homogeneous_trace, py::arg("rank") = g.homogeneous_rank,
                    py::arg("generators") = g.by_rank());
  }, py::arg("text"), py::arg("degree"));

  m.def("basis_dump", [](const std::string& text, int degree) {
    const Problem p = problem_from(text, std::nullopt, std::nullopt);
    return basis_dump(equivariant_basis(p.V, p.W, degree));
  }, py::arg("text"), py::arg("degree"));

  m.def("analyze_json", [](const std::string& text, std::optional<std::uint64_t> seed, std::optional<int> samples) {
    const Problem p = problem_from(text, seed, samples);
    py::gil_scoped_release release;
    return report_json(analyze_problem(p));
  }, py::arg("text"), py::arg("seed") = py::none(), py::arg("samples") = py::none());

  m.def("probe_json", [](const std::string& text, std::optional<std::uint64_t> seed, std::optional<int> draws) {
    Problem p = problem_from(text, seed, std::nullopt);
    if (draws) p.spec.options.probe_draws = *draws;
    py::gil_scoped_release release;
    const ProbeRun run = probe_problem(p);
    return probe_json(run, build_lattice(p.V, p.W), p.spec.options.seed);
  }, py::arg("text"), py::arg("seed") = py::none(), py::arg("draws") = py::none());
}
