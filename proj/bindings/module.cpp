#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <entkit/entkit.hpp>

namespace py = pybind11;
using namespace entkit;

namespace {

DistanceKind kind_from_name(const std::string& name) {
    if (name == "relative-entropy") return DistanceKind::RelativeEntropy;
    if (name == "bures") return DistanceKind::Bures;
    if (name == "trace") return DistanceKind::Trace;
    throw UnknownNameError("distance kind must be relative-entropy, bures, or trace");
}

// LoadedState is not default-constructible, so the generic variant caster
// cannot hold it; convert to and from Python objects by hand instead.
py::object to_py(LoadedState state) {
    return std::visit([](auto&& s) { return py::cast(std::move(s)); }, std::move(state));
}

LoadedState loaded_from(const py::object& obj) {
    if (py::isinstance<PureState>(obj)) return LoadedState(obj.cast<PureState>());
    if (py::isinstance<DensityOperator>(obj)) return LoadedState(obj.cast<DensityOperator>());
    throw py::type_error("expected a PureState or DensityOperator");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Entanglement measures and protocol simulations for finite-dimensional states";

    const auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<ValidationError>(m, "ValidationError", error);
    py::register_exception<ParseError>(m, "ParseError", error);

    py::class_<SubsystemLayout>(m, "SubsystemLayout")
        .def(py::init<std::vector<std::size_t>>(), py::arg("dims"))
        .def_property_readonly("dims", &SubsystemLayout::dims)
        .def_property_readonly("total_dim", &SubsystemLayout::total_dim)
        .def("__repr__", [](const SubsystemLayout& l) {
            std::string out = "SubsystemLayout([";
            for (std::size_t k = 0; k < l.dims().size(); ++k) {
                if (k) out += ", ";
                out += std::to_string(l.dims()[k]);
            }
            return out + "])";
        });

    py::class_<PureState>(m, "PureState")
        .def(py::init<SubsystemLayout, Vector>(), py::arg("layout"), py::arg("amplitudes"))
        .def(py::init([](const std::vector<std::size_t>& dims, const Vector& amps) {
                 return PureState(SubsystemLayout(dims), amps);
             }),
             py::arg("dims"), py::arg("amplitudes"))
        .def_property_readonly("layout", &PureState::layout)
        .def_property_readonly("amplitudes", &PureState::amplitudes);

    py::class_<DensityOperator>(m, "DensityOperator")
        .def(py::init<SubsystemLayout, Matrix>(), py::arg("layout"), py::arg("matrix"))
        .def(py::init([](const std::vector<std::size_t>& dims, const Matrix& matrix) {
                 return DensityOperator(SubsystemLayout(dims), matrix);
             }),
             py::arg("dims"), py::arg("matrix"))
        .def_property_readonly("layout", &DensityOperator::layout)
        .def_property_readonly("matrix", &DensityOperator::matrix);

    py::class_<MeasurementOutcome>(m, "MeasurementOutcome")
        .def_readonly("label", &MeasurementOutcome::label)
        .def_readonly("probability", &MeasurementOutcome::probability)
        .def_readonly("post_state", &MeasurementOutcome::post_state);

    py::class_<MeasurementSet>(m, "MeasurementSet")
        .def(py::init<std::vector<Matrix>, std::vector<std::string>>(), py::arg("operators"),
             py::arg("labels") = std::vector<std::string>{})
        .def_property_readonly("operators", &MeasurementSet::operators)
        .def_property_readonly("labels", &MeasurementSet::labels)
        .def("is_complete", &MeasurementSet::is_complete, py::arg("tol") = 1e-9);

    py::class_<SchmidtDecomposition>(m, "SchmidtDecomposition")
        .def_readonly("coefficients", &SchmidtDecomposition::coefficients)
        .def_readonly("basis_a", &SchmidtDecomposition::basis_a)
        .def_readonly("basis_b", &SchmidtDecomposition::basis_b);

    py::enum_<Bell>(m, "Bell")
        .value("PsiMinus", Bell::PsiMinus)
        .value("PsiPlus", Bell::PsiPlus)
        .value("PhiMinus", Bell::PhiMinus)
        .value("PhiPlus", Bell::PhiPlus);

    py::class_<SeparableSearchOptions>(m, "SeparableSearchOptions")
        .def(py::init<>())
        .def_readwrite("ensemble_size", &SeparableSearchOptions::ensemble_size)
        .def_readwrite("restarts", &SeparableSearchOptions::restarts)
        .def_readwrite("max_iterations", &SeparableSearchOptions::max_iterations)
        .def_readwrite("tolerance", &SeparableSearchOptions::tolerance)
        .def_readwrite("patience", &SeparableSearchOptions::patience)
        .def_readwrite("seed", &SeparableSearchOptions::seed);

    py::class_<SeparableApproximation>(m, "SeparableApproximation")
        .def_readonly("weights", &SeparableApproximation::weights)
        .def_readonly("product_states", &SeparableApproximation::product_states)
        .def("assemble", &SeparableApproximation::assemble, py::arg("layout"),
             py::arg("side_a"));

    py::class_<SeparableDistanceResult>(m, "SeparableDistanceResult")
        .def_readonly("value", &SeparableDistanceResult::value)
        .def_readonly("iterations", &SeparableDistanceResult::iterations)
        .def_readonly("achieved_tolerance", &SeparableDistanceResult::achieved_tolerance)
        .def_readonly("converged", &SeparableDistanceResult::converged)
        .def_readonly("seed", &SeparableDistanceResult::seed)
        .def_readonly("closest", &SeparableDistanceResult::closest);

    py::class_<ConcentrationResult>(m, "ConcentrationResult")
        .def_readonly("p_success", &ConcentrationResult::p_success)
        .def_readonly("p_failure", &ConcentrationResult::p_failure)
        .def_readonly("success_state", &ConcentrationResult::success_state)
        .def_readonly("failure_state", &ConcentrationResult::failure_state);

    py::class_<DistillationStep>(m, "DistillationStep")
        .def_readonly("p_in", &DistillationStep::p_in)
        .def_readonly("p_success", &DistillationStep::p_success)
        .def_readonly("p_01", &DistillationStep::p_01)
        .def_readonly("p_10", &DistillationStep::p_10)
        .def_readonly("p_00", &DistillationStep::p_00)
        .def_readonly("p_next", &DistillationStep::p_next)
        .def_readonly("success_state", &DistillationStep::success_state)
        .def_readonly("retry_state", &DistillationStep::retry_state);

    py::class_<YieldCurve>(m, "YieldCurve")
        .def_readonly("p", &YieldCurve::p)
        .def_readonly("yields", &YieldCurve::yields)
        .def_readonly("converged_yield", &YieldCurve::converged_yield)
        .def_readonly("levels_used", &YieldCurve::levels_used)
        .def_readonly("converged", &YieldCurve::converged);

    // states
    m.def("density_from_pure", &density_from_pure, py::arg("psi"));
    m.def("partial_trace", &partial_trace, py::arg("rho"), py::arg("keep"));
    m.def("partial_transpose", &partial_transpose, py::arg("rho"), py::arg("subsystems"));
    m.def("min_pt_eigenvalue", &min_pt_eigenvalue, py::arg("rho"), py::arg("side_a"));
    m.def("is_ppt", &is_ppt, py::arg("rho"), py::arg("side_a"));
    m.def("fidelity_phi_plus", &fidelity_phi_plus, py::arg("rho"));
    m.def("tensor", py::overload_cast<const PureState&, const PureState&>(&tensor),
          py::arg("a"), py::arg("b"));
    m.def("tensor",
          py::overload_cast<const DensityOperator&, const DensityOperator&>(&tensor),
          py::arg("a"), py::arg("b"));
    m.def("bell_state", &bell_state, py::arg("which"));
    m.def("ghz_state", &ghz_state, py::arg("parties"));
    m.def("w_state", &w_state);
    m.def("max_entangled_state", &max_entangled_state, py::arg("d"));
    m.def("partially_entangled_state", &partially_entangled_state, py::arg("theta"));
    m.def("w_reduced_state", &w_reduced_state);
    m.def("max_mixed_state", &max_mixed_state, py::arg("d"));
    m.def("separable_example_state", &separable_example_state);
    m.def(
        "standard_state", [](const std::string& name) { return to_py(standard_state(name)); },
        py::arg("name"));
    m.def("is_standard_state_name", &is_standard_state_name, py::arg("name"));

    // measurements
    m.def("measure", &measure, py::arg("rho"), py::arg("measurement"));
    m.def("with_conditional_unitaries", &with_conditional_unitaries, py::arg("measurement"),
          py::arg("unitaries"));
    m.def("compose", &compose, py::arg("first"), py::arg("continuations"));

    // pure-state measures
    m.def("schmidt_decompose", &schmidt_decompose, py::arg("psi"), py::arg("side_a"));
    m.def("schmidt_number", &schmidt_number, py::arg("psi"), py::arg("side_a"));
    m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"));
    m.def("entropy_of_entanglement", &entropy_of_entanglement, py::arg("psi"),
          py::arg("side_a"));

    // mixed-state measures
    m.def("concurrence", &concurrence, py::arg("rho"));
    m.def("binary_entropy", &binary_entropy, py::arg("p"));
    m.def("eof_two_qubit", &eof_two_qubit, py::arg("rho"));
    m.def("negativity", &negativity, py::arg("rho"), py::arg("side_a"));
    m.def("log_negativity", &log_negativity, py::arg("rho"), py::arg("side_a"));
    m.def("relative_entropy", &relative_entropy, py::arg("rho"), py::arg("sigma"));
    m.def("uhlmann_fidelity", &uhlmann_fidelity, py::arg("rho"), py::arg("sigma"));
    m.def(
        "distance_to_separable",
        [](const DensityOperator& rho, const std::vector<std::size_t>& side_a,
           const std::string& kind, const SeparableSearchOptions& options) {
            return distance_to_separable(rho, side_a, kind_from_name(kind), options);
        },
        py::arg("rho"), py::arg("side_a"), py::arg("kind") = "relative-entropy",
        py::arg("options") = SeparableSearchOptions{});
    m.def(
        "relative_entropy_of_entanglement",
        [](const DensityOperator& rho, const std::vector<std::size_t>& side_a,
           const SeparableSearchOptions& options) {
            return relative_entropy_of_entanglement(rho, side_a, options);
        },
        py::arg("rho"), py::arg("side_a"),
        py::arg("options") = SeparableSearchOptions{});
    m.def(
        "bures_measure",
        [](const DensityOperator& rho, const std::vector<std::size_t>& side_a,
           const SeparableSearchOptions& options) {
            return bures_measure(rho, side_a, options);
        },
        py::arg("rho"), py::arg("side_a"),
        py::arg("options") = SeparableSearchOptions{});

    // protocols
    m.def("transform_bell", &transform_bell, py::arg("theta"));
    m.def("concentrate", &concentrate, py::arg("theta"));
    m.def("distill_step", &distill_step, py::arg("p"));
    m.def("simulate_distill_step", &simulate_distill_step, py::arg("p"));
    m.def("total_yield", &total_yield, py::arg("p"), py::arg("iterations") = 3,
          py::arg("tol") = 1e-9);

    // state files
    m.def(
        "parse_state_text", [](const std::string& text) { return to_py(parse_state_text(text)); },
        py::arg("text"));
    m.def(
        "load_state_file", [](const std::string& path) { return to_py(load_state_file(path)); },
        py::arg("path"));
    m.def(
        "format_state", [](const py::object& state) { return format_state(loaded_from(state)); },
        py::arg("state"));
    m.def(
        "save_state_file",
        [](const py::object& state, const std::string& path) {
            save_state_file(loaded_from(state), path);
        },
        py::arg("state"), py::arg("path"));
    m.def(
        "resolve_state", [](const std::string& spec) { return to_py(resolve_state(spec)); },
        py::arg("spec"));
    m.def(
        "as_density", [](const py::object& state) { return as_density(loaded_from(state)); },
        py::arg("state"));
}
