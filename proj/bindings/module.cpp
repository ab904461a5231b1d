#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "molq/dynamics.hpp"
#include "molq/geometry.hpp"
#include "molq/hamiltonian.hpp"
#include "molq/quantify.hpp"
#include "molq/scenarios.hpp"
#include "molq/spectral.hpp"

namespace py = pybind11;
using namespace molq;

namespace {

py::dict metric_dict(const MetricResult& m) {
  py::dict d;
  d["name"] = m.name;
  d["value"] = m.value;
  d["expected"] = m.expected;
  d["tolerance"] = m.tolerance;
  d["comparison"] = m.comparison;
  d["source"] = m.source;
  d["passed"] = m.passed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dissipative dynamics, entanglement and Mermin nonlocality of "
            "dipole-coupled molecular qubit arrays";

  // ----- geometry -----
  py::class_<DipoleSite>(m, "DipoleSite")
      .def(py::init<const Vec3&, const Vec3&, double, double, double>(),
           py::arg("position_nm"), py::arg("orientation"),
           py::arg("dipole_debye") = 10.0, py::arg("nu_thz") = 522.0,
           py::arg("t1_ns") = 5.8)
      .def_readonly("position_nm", &DipoleSite::position_nm)
      .def_readonly("orientation", &DipoleSite::orientation)
      .def_readonly("dipole_debye", &DipoleSite::dipole_debye)
      .def_readonly("nu_thz", &DipoleSite::nu_thz)
      .def_readonly("t1_ns", &DipoleSite::t1_ns);

  py::class_<MolecularArray>(m, "MolecularArray")
      .def(py::init<std::vector<DipoleSite>, double>(), py::arg("sites"),
           py::arg("refractive_index") = 1.5)
      .def_readonly("sites", &MolecularArray::sites)
      .def_readonly("refractive_index", &MolecularArray::refractive_index)
      .def("__len__", &MolecularArray::size);

  py::class_<CollectiveParams>(m, "CollectiveParams")
      .def_readonly("coupling_ghz", &CollectiveParams::coupling_ghz)
      .def_readonly("damping_ghz", &CollectiveParams::damping_ghz);

  m.def("collective_damping", &collective_damping, py::arg("array"), py::arg("i"),
        py::arg("j"), "Cross-damping rate Gamma_ij in GHz (1-based sites)");
  m.def("dipole_coupling", &dipole_coupling, py::arg("array"), py::arg("i"),
        py::arg("j"), "Coherent coupling V_ij in GHz (1-based sites)");
  m.def("collective_params", &collective_params, py::arg("array"));
  m.def(
      "coupling_curve",
      [](const MolecularArray& templ, double r_min, double r_max, int steps) {
        py::list rows;
        for (const auto& row : coupling_curve(templ, r_min, r_max, steps)) {
          py::dict d;
          d["r_nm"] = row.r_nm;
          d["coupling_ghz"] = row.coupling_ghz;
          d["damping_ghz"] = row.damping_ghz;
          rows.append(d);
        }
        return rows;
      },
      py::arg("template_array"), py::arg("r_min_nm"), py::arg("r_max_nm"),
      py::arg("steps"));
  m.def("homogeneous_linewidth", &homogeneous_linewidth, py::arg("t1_ns"),
        py::arg("t2_star_ns"));
  m.def("dimer_fig1", &dimer_fig1);
  m.def("trimer_fig1", &trimer_fig1);

  // ----- hamiltonian -----
  py::enum_<Frame>(m, "Frame")
      .value("lab_rwa", Frame::lab_rwa)
      .value("laser_rotating", Frame::laser_rotating);

  py::class_<Hamiltonian>(m, "Hamiltonian")
      .def_readonly("matrix_ghz", &Hamiltonian::matrix_ghz)
      .def_readonly("n_qubits", &Hamiltonian::n_qubits)
      .def_readonly("frame", &Hamiltonian::frame)
      .def_readonly("frame_freq_thz", &Hamiltonian::frame_freq_thz)
      .def_readonly("basis", &Hamiltonian::basis);

  py::class_<LaserDrive>(m, "LaserDrive")
      .def(py::init([](double rabi, double freq, std::vector<bool> mask) {
             LaserDrive d;
             d.rabi_ghz = rabi;
             d.frequency_thz = freq;
             d.addressed = std::move(mask);
             return d;
           }),
           py::arg("rabi_ghz"), py::arg("frequency_thz"),
           py::arg("addressed") = std::vector<bool>{})
      .def_readonly("rabi_ghz", &LaserDrive::rabi_ghz)
      .def_readonly("frequency_thz", &LaserDrive::frequency_thz);

  m.def("build_dimer", &build_dimer, py::arg("nu1_thz"), py::arg("nu2_thz"),
        py::arg("v12_ghz"));
  m.def("build_dimer_driven", &build_dimer_driven, py::arg("base"), py::arg("drive"));
  m.def("build_trimer_bare", &build_trimer_bare, py::arg("nu_thz"),
        py::arg("nu2_thz"), py::arg("v_ghz"), py::arg("v13_ghz"));
  m.def(
      "build_trimer_driven",
      [](double nu, double nu2, double v, double v13, const LaserDrive& drive) {
        return build_trimer_driven({nu, nu2, v, v13}, drive);
      },
      py::arg("nu_thz"), py::arg("nu2_thz"), py::arg("v_ghz"), py::arg("v13_ghz"),
      py::arg("drive"));
  m.def("rotating_frame", &rotating_frame, py::arg("lab"), py::arg("frame_freq_thz"));

  // ----- states and dynamics -----
  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<Mat, int>(), py::arg("matrix"), py::arg("n_qubits"))
      .def_static("pure", &DensityMatrix::pure, py::arg("psi"))
      .def_static("basis_state", &DensityMatrix::basis_state, py::arg("bits"))
      .def_readonly("matrix", &DensityMatrix::matrix)
      .def_readonly("n_qubits", &DensityMatrix::n_qubits)
      .def("trace_error", &DensityMatrix::trace_error)
      .def("min_eigenvalue", &DensityMatrix::min_eigenvalue)
      .def("purity", &DensityMatrix::purity)
      .def("is_valid", &DensityMatrix::is_valid, py::arg("trace_tol") = 1e-9,
           py::arg("eig_tol") = 1e-7);

  m.def("flip_qubit", &flip_qubit, py::arg("state"), py::arg("site"),
        "Apply sigma_x on a site (1-based, leftmost = site 1)");

  py::class_<RecordSpec>(m, "RecordSpec")
      .def(py::init<>())
      .def_readwrite("decimation", &RecordSpec::decimation)
      .def_readwrite("max_records", &RecordSpec::max_records)
      .def_readwrite("capture_times_ps", &RecordSpec::capture_times_ps);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times_ps", &Trajectory::times_ps)
      .def_readonly("states", &Trajectory::states)
      .def_readonly("captures", &Trajectory::captures)
      .def("__len__", &Trajectory::size);

  m.def("dissipator", &dissipator, py::arg("rho"), py::arg("gamma"),
        "Dissipative part of d rho/dt in GHz");
  m.def("evolve", &evolve, py::arg("h"), py::arg("gamma"), py::arg("rho0"),
        py::arg("t_final_ps"), py::arg("dt_ps"), py::arg("record") = RecordSpec{});
  m.def("step_size_suggest", &step_size_suggest, py::arg("h"),
        py::arg("fallback_ps") = 0.01);

  // ----- spectral -----
  py::class_<EigenSystem>(m, "EigenSystem")
      .def_readonly("energies", &EigenSystem::energies)
      .def_readonly("states", &EigenSystem::states)
      .def_readonly("labels", &EigenSystem::labels)
      .def_readonly("unit", &EigenSystem::unit)
      .def("state", &EigenSystem::state, py::arg("label"))
      .def("energy", &EigenSystem::energy, py::arg("label"));

  m.def("eigensystem_numeric", &eigensystem_numeric, py::arg("h"));
  m.def("trimer_eigensystem_analytic", &trimer_eigensystem_analytic,
        py::arg("nu_thz"), py::arg("nu2_thz"), py::arg("v_ghz"), py::arg("v13_ghz"));

  py::enum_<EntanglementClass>(m, "EntanglementClass")
      .value("product", EntanglementClass::product)
      .value("pairwise", EntanglementClass::pairwise)
      .value("tripartite", EntanglementClass::tripartite);
  m.def("eigenstate_entanglement_class", &eigenstate_entanglement_class,
        py::arg("state"));

  // ----- quantify -----
  py::class_<MerminSetting>(m, "MerminSetting")
      .def(py::init([](std::array<double, 3> theta, std::array<double, 3> phi) {
             MerminSetting s;
             s.theta = theta;
             s.phi = phi;
             s.validate();
             return s;
           }),
           py::arg("theta"), py::arg("phi"))
      .def_readonly("theta", &MerminSetting::theta)
      .def_readonly("phi", &MerminSetting::phi);

  py::class_<Bipartition>(m, "Bipartition")
      .def(py::init<std::vector<int>, int>(), py::arg("side_a"), py::arg("n_qubits"))
      .def_readonly("side_a", &Bipartition::side_a)
      .def("side_b", &Bipartition::side_b);

  py::class_<MerminOptions>(m, "MerminOptions")
      .def(py::init<>())
      .def_readwrite("grid_points", &MerminOptions::grid_points)
      .def_readwrite("top_k", &MerminOptions::top_k)
      .def_readwrite("min_step", &MerminOptions::min_step);

  m.def("fidelity", &fidelity, py::arg("rho"), py::arg("sigma"));
  m.def("concurrence", &concurrence, py::arg("rho"));
  m.def("eof", &eof, py::arg("rho"));
  m.def("negativity", &negativity, py::arg("rho"), py::arg("partition"));
  m.def("partial_transpose", &partial_transpose, py::arg("rho"), py::arg("partition"));
  m.def("partial_trace", &partial_trace, py::arg("rho"), py::arg("keep_sites"));
  m.def("mermin_value", &mermin_value, py::arg("rho"), py::arg("setting"));
  m.def("mermin_maximize", &mermin_maximize, py::arg("rho"),
        py::arg("options") = MerminOptions{});

  // ----- scenarios -----
  m.def("scenario_names", &scenario_names);
  m.def(
      "run_scenario",
      [](const std::string& name, const std::string& config_json,
         const std::string& output_dir) {
        RunConfig cfg =
            config_json.empty() ? RunConfig{} : parse_config(config_json);
        const ScenarioResult r = run_scenario(name, cfg);
        if (!output_dir.empty()) write_outputs(r, output_dir);
        py::dict d;
        d["name"] = r.name;
        d["passed"] = r.passed();
        py::list metrics;
        for (const auto& mr : r.metrics) metrics.append(metric_dict(mr));
        d["metrics"] = metrics;
        d["parameters"] = r.parameters.dump();
        py::dict cols;
        cols["t_ps"] = r.times_ps;
        for (const auto& c : r.columns) cols[c.name.c_str()] = c.values;
        d["columns"] = cols;
        return d;
      },
      py::arg("name"), py::arg("config_json") = std::string(),
      py::arg("output_dir") = std::string(),
      "Run a named scenario; returns metrics and recorded columns");

  py::list names;
  for (const char* n :
       {"DipoleSite", "MolecularArray", "CollectiveParams", "collective_damping",
        "dipole_coupling", "collective_params", "coupling_curve",
        "homogeneous_linewidth", "dimer_fig1", "trimer_fig1", "Frame",
        "Hamiltonian", "LaserDrive", "build_dimer", "build_dimer_driven",
        "build_trimer_bare", "build_trimer_driven", "rotating_frame",
        "DensityMatrix", "flip_qubit", "RecordSpec", "Trajectory", "dissipator",
        "evolve", "step_size_suggest", "EigenSystem", "eigensystem_numeric",
        "trimer_eigensystem_analytic", "EntanglementClass",
        "eigenstate_entanglement_class", "MerminSetting", "Bipartition",
        "MerminOptions", "fidelity", "concurrence", "eof", "negativity",
        "partial_transpose", "partial_trace", "mermin_value", "mermin_maximize",
        "scenario_names", "run_scenario"})
    names.append(n);
  m.attr("__all__") = names;
}
