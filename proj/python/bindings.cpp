#include "auxeig/benchmarks.hpp"
#include "auxeig/errors.hpp"
#include "auxeig/experiment.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace auxeig;

namespace
{

std::string run_json(const std::string& config_text, std::optional<std::string> output_dir, bool write)
{
  ExperimentConfig cfg = parse_config(config_text);
  if (output_dir) cfg.output_dir = *output_dir;
  validate_config(cfg);
  RunArtifacts art;
  {
    py::gil_scoped_release nogil;
    art = run_experiment(cfg);
  }
  if (write) emit_report(art, cfg.format);
  return artifacts_to_json(art);
}

Vec eigenvalues(const std::string& domain, int p, int r, const std::string& family, int layers, int divisions,
                int bc_case, std::optional<std::string> bridge_bc)
{
  DomainSpec spec;
  spec.domain = domain_from_string(domain);
  spec.grading_layers = layers;
  spec.square_divisions = divisions;
  spec.bc_case = bc_case;
  if (bridge_bc) spec.bridge_bc = *bridge_bc == "n" || *bridge_bc == "Neumann" ? BoundaryCondition::Neumann
                                                                             : BoundaryCondition::Dirichlet;
  py::gil_scoped_release nogil;
  const Mesh mesh = build_domain_mesh(spec);
  const DofMap d = build_dof_map(mesh, assign_degrees(mesh, family_from_string(family), p));
  const SpaceForms f = assemble_space(mesh, d);
  return solve_generalized_symmetric(f.K, f.M, r).values;
}

}  // namespace

PYBIND11_MODULE(_auxeig, m)
{
  m.doc() = "hp-FEM Laplace eigenvalues with auxiliary-subspace cluster estimates";

  auto base = py::register_exception<Error>(m, "AuxeigError", PyExc_RuntimeError);
  py::register_exception<ConfigurationError>(m, "ConfigurationError", base.ptr());
  py::register_exception<GeometryError>(m, "GeometryError", base.ptr());
  py::register_exception<MatrixError>(m, "MatrixError", base.ptr());
  py::register_exception<SolverError>(m, "SolverError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<CapabilityError>(m, "CapabilityError", base.ptr());
  py::register_exception<PoleError>(m, "PoleError", base.ptr());
  py::register_exception<ContractViolation>(m, "ContractViolation", base.ptr());
  py::register_exception<InvariantViolation>(m, "InvariantViolation", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.def("run_json", &run_json, py::arg("config_text"), py::arg("output_dir") = py::none(), py::arg("write") = false);
  m.def("eigenvalues", &eigenvalues, py::arg("domain"), py::arg("p"), py::arg("r"), py::arg("family") = "P",
        py::arg("layers") = 0, py::arg("divisions") = 2, py::arg("bc_case") = 0, py::arg("bridge_bc") = py::none());

  m.def("bessel_j", &bessel_j, py::arg("order"), py::arg("x"));
  m.def("bessel_roots", &bessel_roots, py::arg("order"), py::arg("count"));
  m.def(
      "slit_disk_spectrum",
      [](int count) {
        std::vector<std::tuple<int, int, double>> out;
        for (const AnalyticMode& a : slit_disk_spectrum(count)) out.emplace_back(a.m, a.n, a.lambda);
        return out;
      },
      py::arg("count"), "(m, n, lambda) for the lowest `count` slit-disk eigenvalues");
  m.def("reference_table", [](const std::string& label) { return reference_table(label).values; }, py::arg("label"));
  m.def("reference_labels", [] {
    std::vector<std::string> out;
    for (const auto& t : reference_tables()) out.push_back(t.label);
    return out;
  });

  m.def("constant_C", &constant_C_interval, py::arg("mu_hat"), py::arg("a"), py::arg("b"));
  m.def("hausdorff_distance", &hausdorff_distance, py::arg("a"), py::arg("b"));
  m.def("subspace_gap", &subspace_gap, py::arg("X"), py::arg("Y"), py::arg("B"));
}
