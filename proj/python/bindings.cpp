#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "piezobeam/beam.hpp"
#include "piezobeam/errors.hpp"
#include "piezobeam/io.hpp"
#include "piezobeam/materials.hpp"
#include "piezobeam/section.hpp"

namespace py = pybind11;
using namespace piezobeam;

namespace {

Section section_from_file(const std::string& layup_path, const std::optional<std::string>& materials_path)
{
    const MaterialDb db = materials_path ? load_material_db(*materials_path) : MaterialDb::builtin();
    return build_section(load_layup(layup_path), db);
}

GeneralizedState make_state(double eps, double kappa, const Eigen::VectorXd& V)
{
    GeneralizedState st;
    st.eps = eps;
    st.kappa = kappa;
    st.V = V;
    return st;
}

} // namespace

PYBIND11_MODULE(_piezobeam, m)
{
    m.doc() = "Coupled constitutive reduction of laminated piezoelectric beams (SI units throughout).";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ComputationError>(m, "ComputationError", PyExc_ArithmeticError);

    py::enum_<Closure>(m, "Closure")
        .value("ND", Closure::ND)
        .value("NS", Closure::NS)
        .value("NSR", Closure::NSR);
    py::enum_<Wiring>(m, "Wiring").value("PARALLEL", Wiring::Parallel).value("INDEPENDENT", Wiring::Independent);
    py::enum_<ElectricalCondition>(m, "Condition")
        .value("BLOCKED", ElectricalCondition::Blocked)
        .value("FREE", ElectricalCondition::Free);
    py::enum_<Boundary>(m, "Boundary")
        .value("CANTILEVER", Boundary::Cantilever)
        .value("SIMPLY_SUPPORTED", Boundary::SimplySupported);
    py::enum_<Circuit>(m, "Circuit").value("SHORT", Circuit::Short).value("OPEN", Circuit::Open);

    py::class_<PlaneMaterial>(m, "PlaneMaterial")
        .def_readonly("Q11", &PlaneMaterial::Q11)
        .def_readonly("Q12", &PlaneMaterial::Q12)
        .def_readonly("Q22", &PlaneMaterial::Q22)
        .def_readonly("e31", &PlaneMaterial::e31)
        .def_readonly("e32", &PlaneMaterial::e32)
        .def_readonly("eps33", &PlaneMaterial::eps33)
        .def_readonly("density", &PlaneMaterial::density);

    py::class_<MaterialDb>(m, "MaterialDb")
        .def_static("builtin", &MaterialDb::builtin, py::return_value_policy::copy)
        .def_static("from_json_text", &MaterialDb::from_json_text, py::arg("text"))
        .def_static("load", &load_material_db, py::arg("path"))
        .def("names", &MaterialDb::names)
        .def("plane", &MaterialDb::plane, py::arg("name"))
        .def("warnings", &MaterialDb::warnings)
        .def("__contains__", &MaterialDb::contains);

    py::class_<Layer>(m, "Layer")
        .def_readonly("material_name", &Layer::material_name)
        .def_readonly("material", &Layer::material)
        .def_readonly("thickness", &Layer::thickness)
        .def_readonly("poling", &Layer::poling)
        .def_readonly("electroded", &Layer::electroded);

    py::class_<Section>(m, "Section")
        .def_readonly("layers", &Section::layers)
        .def_readonly("width", &Section::width)
        .def_readonly("interfaces", &Section::interfaces)
        .def_readonly("terminal_count", &Section::terminal_count)
        .def_property_readonly("total_thickness", &Section::total_thickness)
        .def_property_readonly("mass_per_length", &Section::mass_per_length);

    m.def("load_section", &section_from_file, py::arg("layup_path"), py::arg("materials_path") = py::none(),
          "Build a section from a layup JSON file and an optional material database.");
    m.def(
        "section_from_json",
        [](const std::string& layup_json, const MaterialDb& db) { return build_section(parse_layup(layup_json), db); },
        py::arg("layup_json"), py::arg("db") = MaterialDb::builtin());

    py::class_<SectionConstitutive>(m, "Constitutive")
        .def_readonly("Kmm", &SectionConstitutive::Kmm)
        .def_readonly("Kme", &SectionConstitutive::Kme)
        .def_readonly("Cq", &SectionConstitutive::Cq)
        .def_property_readonly("A", &SectionConstitutive::A)
        .def_property_readonly("B", &SectionConstitutive::B)
        .def_property_readonly("D", &SectionConstitutive::D)
        .def_property_readonly("terminals", &SectionConstitutive::terminals)
        .def("full", &SectionConstitutive::full);

    m.def("reduce_section", &reduce_section, py::arg("section"), py::arg("closure") = Closure::NSR);
    m.def("nsr_transverse_field", [](const Section& s) { return nsr_transverse_field(s).coefficients; },
          py::arg("section"), "Rows (a, b) of S22 = a + b z per unit (eps, kappa, V...).");
    m.def("capacitance_per_length", &capacitance_per_length, py::arg("constitutive"),
          py::arg("condition") = ElectricalCondition::Blocked, py::arg("terminal") = 0);
    m.def(
        "discretized_oracle",
        [](const Section& s, Closure c, int sublayers) { return discretized_oracle(s, c, sublayers).constitutive; },
        py::arg("section"), py::arg("closure"), py::arg("sublayers") = 200);

    py::class_<StressProfile>(m, "StressProfile")
        .def_readonly("N2", &StressProfile::N2)
        .def_readonly("M2", &StressProfile::M2)
        .def_property_readonly("max_abs_t22", &StressProfile::max_abs_t22)
        .def_property_readonly("samples", [](const StressProfile& p) {
            py::list out;
            for (const StressSample& s : p.samples) {
                out.append(py::make_tuple(s.layer, s.z, s.t11, s.t22));
            }
            return out;
        });
    m.def(
        "stress_profile",
        [](const Section& s, Closure c, double eps, double kappa, const Eigen::VectorXd& V, int samples) {
            return recover_stress_profile(s, c, make_state(eps, kappa, V), samples);
        },
        py::arg("section"), py::arg("closure"), py::arg("eps"), py::arg("kappa"), py::arg("voltages"),
        py::arg("samples_per_layer") = 11);

    py::class_<ClosureRow>(m, "ClosureRow")
        .def_readonly("closure", &ClosureRow::closure)
        .def_readonly("blocked_capacitance", &ClosureRow::blocked_capacitance)
        .def_readonly("free_capacitance", &ClosureRow::free_capacitance)
        .def_readonly("A", &ClosureRow::A)
        .def_readonly("D", &ClosureRow::D)
        .def_readonly("gk", &ClosureRow::gk)
        .def_readonly("deviation_percent", &ClosureRow::deviation_percent);
    m.def(
        "compare_closures",
        [](const Section& s, std::optional<double> reference) { return compare_closures(s, reference).rows; },
        py::arg("section"), py::arg("reference_capacitance") = py::none());

    py::class_<Beam>(m, "Beam")
        .def_readonly("section", &Beam::section)
        .def_readonly("mass_per_length", &Beam::mass_per_length)
        .def_readonly("length", &Beam::length);
    m.def("make_beam", &make_beam, py::arg("section"), py::arg("closure"), py::arg("length"),
          py::arg("boundary") = Boundary::Cantilever);
    m.def("modal_frequencies", &modal_frequencies, py::arg("beam"), py::arg("circuit") = Circuit::Short,
          py::arg("modes") = 4);
    m.def("coupling_factor", &coupling_factor, py::arg("beam"), py::arg("mode") = 1);
    m.def("tip_deflection", &cantilever_tip_deflection, py::arg("beam"), py::arg("voltages"));
    m.def(
        "free_actuation",
        [](const SectionConstitutive& k, const Eigen::VectorXd& V) {
            const GeneralizedState st = free_actuation_state(k, V);
            return py::make_tuple(st.eps, st.kappa);
        },
        py::arg("constitutive"), py::arg("voltages"));
    m.def("sensor_charge", &sensor_charge, py::arg("constitutive"), py::arg("eps"), py::arg("kappa"));

    m.attr("__version__") = PIEZOBEAM_VERSION;
}
