#include "molq/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "molq/scenarios.hpp"
#include "molq/spectral.hpp"

namespace molq {

namespace {

namespace fs = std::filesystem;

std::string default_output_dir(const RunConfig& cfg) {
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  if (const char* env = std::getenv("MOLQ_OUTPUT_DIR")) return env;
  return "out";
}

RunConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void print_metrics(const ScenarioResult& r) {
  std::cout << "scenario " << r.name << (r.passed() ? "  [PASS]" : "  [FAIL]") << "\n";
  for (const auto& m : r.metrics) {
    std::cout << "  " << (m.passed ? "[pass] " : "[FAIL] ") << m.name << " = "
              << m.value << "  (" << m.comparison << " " << m.expected;
    if (m.comparison == "abs" || m.comparison == "rel")
      std::cout << " +- " << m.tolerance << (m.comparison == "rel" ? " rel" : "");
    std::cout << ", " << m.source << ")\n";
  }
}

int cmd_scenario(const std::string& name, const RunConfig& cfg) {
  const std::string dir = default_output_dir(cfg);
  const ScenarioResult r = run_scenario(name, cfg);
  write_outputs(r, dir);
  std::cout << "effective config:\n" << emit_config(cfg);
  print_metrics(r);
  std::cout << "outputs: " << (fs::path(dir) / (r.name + "_timeseries.csv")).string()
            << ", " << (fs::path(dir) / (r.name + "_summary.json")).string() << "\n";
  return r.passed() ? 0 : 1;
}

int cmd_suite(const RunConfig& cfg) {
  const std::string dir = default_output_dir(cfg);
  bool all_ok = true;
  std::cout << "effective config:\n" << emit_config(cfg);
  for (const auto& name : scenario_names()) {
    const ScenarioResult r = run_scenario(name, cfg);
    write_outputs(r, dir);
    int failed = 0;
    for (const auto& m : r.metrics)
      if (!m.passed) ++failed;
    std::cout << (r.passed() ? "[PASS] " : "[FAIL] ") << r.name << "  ("
              << r.metrics.size() - failed << "/" << r.metrics.size()
              << " checks)\n";
    if (!r.passed()) {
      for (const auto& m : r.metrics)
        if (!m.passed)
          std::cout << "       failed: " << m.name << " = " << m.value
                    << " (expected " << m.comparison << " " << m.expected << ")\n";
      all_ok = false;
    }
  }
  return all_ok ? 0 : 1;
}

int cmd_geometry_couplings(const std::string& preset, double r_min, double r_max,
                           int steps, const RunConfig& cfg) {
  MolecularArray array = preset == "dimer_fig1" ? dimer_fig1() : trimer_fig1();
  if (cfg.geometry) array = *cfg.geometry;
  const auto rows = coupling_curve(array, r_min, r_max, steps);
  const std::string dir = default_output_dir(cfg);
  fs::create_directories(dir);
  const fs::path out = fs::path(dir) / "coupling_curve.csv";
  std::ofstream csv(out);
  csv << "# nearest-neighbour separation sweep of " << preset
      << "; V_ij and Gamma_ij in GHz\n";
  csv << "r_nm";
  const int n = array.size();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) csv << ",v" << i << j << "_ghz";
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) csv << ",gamma" << i << j << "_ghz";
  csv << "\n";
  csv.precision(12);
  for (const auto& row : rows) {
    csv << row.r_nm;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) csv << "," << row.coupling_ghz(i, j);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) csv << "," << row.damping_ghz(i, j);
    csv << "\n";
  }
  std::cout << "wrote " << rows.size() << " rows to " << out.string() << "\n";
  return 0;
}

int cmd_spectrum(const std::string& preset, double nu, double nu2, double v,
                 double v13, const RunConfig& cfg) {
  if (preset == "d2") {
    nu = 700.0; nu2 = 712.0; v = 1200.0; v13 = -120.0;
  } else if (preset == "d3") {
    nu = 700.0; nu2 = 701.2; v = 1200.0; v13 = -120.0;
  } else if (!preset.empty()) {
    throw std::invalid_argument("unknown spectrum preset: " + preset);
  }
  const EigenSystem analytic = trimer_eigensystem_analytic(nu, nu2, v, v13);
  const EigenSystem numeric = eigensystem_numeric(build_trimer_bare(nu, nu2, v, v13));

  const std::string dir = default_output_dir(cfg);
  fs::create_directories(dir);
  const fs::path out = fs::path(dir) / "spectrum.csv";
  std::ofstream csv(out);
  csv << "# bare trimer eigensystem, nu=" << nu << " THz, nu2=" << nu2
      << " THz, V=" << v << " GHz, V13=" << v13
      << " GHz; coefficients in basis |000>..|111>\n";
  csv << "label,energy_thz,energy_numeric_thz";
  for (const auto& b : basis_labels(3)) csv << ",c_" << b;
  csv << ",class\n";
  csv.precision(10);
  for (int k = 0; k < 8; ++k) {
    const Vec state = analytic.states.col(k);
    csv << "E" << analytic.labels[k] << "," << analytic.energies(k) << ","
        << numeric.energies(k);
    for (int b = 0; b < 8; ++b) csv << "," << state(b).real();
    csv << "," << to_string(eigenstate_entanglement_class(state)) << "\n";
  }
  std::cout << "wrote " << out.string() << "\n";
  for (int k = 0; k < 8; ++k)
    std::cout << "E" << analytic.labels[k] << " = " << analytic.energies(k)
              << " THz  ["
              << to_string(eigenstate_entanglement_class(analytic.states.col(k)))
              << "]\n";
  return 0;
}

DensityMatrix mermin_state(const std::string& spec) {
  if (spec == "w") {
    Vec v = Vec::Zero(8);
    v(1) = v(2) = v(4) = 1.0;
    return DensityMatrix::pure(v);
  }
  if (spec == "w_minus") {
    Vec v = Vec::Zero(8);
    v(1) = v(4) = 1.0;
    v(2) = -1.0;
    return DensityMatrix::pure(v);
  }
  if (spec == "curly_w") {
    Vec v = Vec::Zero(8);
    v(4) = v(1) = 0.5;
    v(2) = std::sqrt(2.0) / 2.0 * std::exp(cd(0, -0.489 * M_PI));
    return DensityMatrix::pure(v);
  }
  if (spec == "psi_plus_13") {
    Vec v = Vec::Zero(8);
    v(4) = v(1) = 1.0;
    return DensityMatrix::pure(v);
  }
  if (spec.size() == 3 && spec.find_first_not_of("01") == std::string::npos)
    return DensityMatrix::basis_state(spec);
  // Otherwise a JSON file holding {"re": [[..]], "im": [[..]]}.
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("mermin: unknown state or unreadable file: " + spec);
  nlohmann::json doc = nlohmann::json::parse(in);
  const auto re = doc.at("re");
  const auto im = doc.at("im");
  const int dim = static_cast<int>(re.size());
  if (dim != 8) throw std::invalid_argument("mermin: state file must be 8x8");
  Mat m(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      m(i, j) = cd(re[i][j].get<double>(), im[i][j].get<double>());
  return DensityMatrix(m, 3);
}

int cmd_mermin(const std::string& state_spec, const RunConfig& cfg) {
  const DensityMatrix rho = mermin_state(state_spec);
  MerminOptions opt;
  if (cfg.mermin_grid_points) opt.grid_points = *cfg.mermin_grid_points;
  if (cfg.mermin_top_k) opt.top_k = *cfg.mermin_top_k;
  const auto [value, setting] = mermin_maximize(rho, opt);
  std::cout << "state: " << state_spec << "\n";
  std::cout << "best upsilon: " << value << "\n";
  std::cout << "theta: " << setting.theta[0] << " " << setting.theta[1] << " "
            << setting.theta[2] << "\n";
  std::cout << "phi:   " << setting.phi[0] << " " << setting.phi[1] << " "
            << setting.phi[2] << "\n";
  std::cout << "classical bound 2 " << (value > 2.0 + 1e-9 ? "violated" : "not violated")
            << "\n";
  return 0;
}

int cmd_evolve(const RunConfig& cfg) {
  const std::string system = cfg.system.value_or("dimer");
  Hamiltonian h;
  CollectiveParams gamma;
  std::string init;
  if (system == "dimer") {
    const double v = cfg.v_ghz.value_or(1356.0);
    const double delta = cfg.delta_minus_ghz.value_or(14.3);
    const double nu2 = 522.0, nu1 = 522.0 + delta * 1e-3;
    h = rotating_frame(build_dimer(nu1, nu2, v), 0.5 * (nu1 + nu2));
    gamma.damping_ghz.resize(2, 2);
    const double g = cfg.gamma_ghz.value_or(0.172);
    const double g12 = cfg.gamma12_ghz.value_or(-0.086);
    gamma.damping_ghz << g, g12, g12, g;
    gamma.coupling_ghz = Eigen::MatrixXd::Zero(2, 2);
    init = cfg.initial_state.value_or("01");
  } else if (system == "trimer") {
    const double v = cfg.v_ghz.value_or(1356.0);
    const double v13 = cfg.v13_ghz.value_or(-122.0);
    const double delta = cfg.delta_minus_ghz.value_or(10.0);
    const double nu = 522.0, nu2 = 522.0 + delta * 1e-3;
    h = rotating_frame(build_trimer_bare(nu, nu2, v, v13), (2.0 * nu + nu2) / 3.0);
    gamma.damping_ghz.resize(3, 3);
    const double g = cfg.gamma_ghz.value_or(0.172);
    const double g12 = cfg.gamma12_ghz.value_or(-0.086);
    const double g13 = cfg.gamma13_ghz.value_or(0.172);
    gamma.damping_ghz << g, g12, g13, g12, g, g12, g13, g12, g;
    gamma.coupling_ghz = Eigen::MatrixXd::Zero(3, 3);
    init = cfg.initial_state.value_or("010");
  } else {
    throw std::invalid_argument("evolve: system must be \"dimer\" or \"trimer\"");
  }
  if (cfg.omega_ghz && *cfg.omega_ghz != 0.0)
    throw std::invalid_argument("evolve: laser drive requires a scenario run");

  const double dt = cfg.dt_ps.value_or(step_size_suggest(h));
  const double t_final = cfg.t_final_ps.value_or(100.0 * dt);
  RecordSpec rec;
  rec.decimation = cfg.record_decimation;
  const Trajectory traj =
      evolve(h, gamma, DensityMatrix::basis_state(init), t_final, dt, rec);

  const std::string dir = default_output_dir(cfg);
  fs::create_directories(dir);
  const fs::path out = fs::path(dir) / "evolve_timeseries.csv";
  std::ofstream csv(out);
  csv << "# populations of " << system << " starting from |" << init
      << ">, dt = " << dt << " ps\n";
  csv << "t_ps";
  for (const auto& b : basis_labels(h.n_qubits)) csv << ",pop_" << b;
  csv << ",purity\n";
  csv.precision(12);
  for (size_t k = 0; k < traj.size(); ++k) {
    csv << traj.times_ps[k];
    for (int i = 0; i < h.dim(); ++i)
      csv << "," << traj.at(k).matrix(i, i).real();
    csv << "," << traj.at(k).purity() << "\n";
  }
  std::cout << "effective config:\n" << emit_config(cfg);
  std::cout << "wrote " << traj.size() << " records to " << out.string() << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Dissipative dynamics, entanglement and nonlocality of "
               "dipole-coupled molecular qubit arrays"};
  app.require_subcommand(1);

  std::string config_path, out_dir, name, preset, state_spec;
  double r_min = 2.0, r_max = 5.0;
  int steps = 200;
  double nu = 700.0, nu2 = 712.0, v = 1200.0, v13 = -120.0;
  int grid = 0, topk = 0;

  auto* sc = app.add_subcommand("scenario", "run one named scenario");
  sc->add_option("name", name, "scenario name")->required();
  sc->add_option("--config", config_path, "JSON config file");
  sc->add_option("--out", out_dir, "output directory");

  auto* su = app.add_subcommand("suite", "run every scenario and print a pass/fail table");
  su->add_option("--config", config_path, "JSON config file");
  su->add_option("--out", out_dir, "output directory");

  auto* ge = app.add_subcommand("geometry", "geometry tools");
  auto* gc = ge->add_subcommand("couplings", "collective parameters vs separation");
  gc->add_option("--preset", preset, "dimer_fig1 or trimer_fig1")
      ->default_val("trimer_fig1")
      ->check(CLI::IsMember({"dimer_fig1", "trimer_fig1"}));
  gc->add_option("--r-min", r_min, "smallest separation (nm)");
  gc->add_option("--r-max", r_max, "largest separation (nm)");
  gc->add_option("--steps", steps, "sample count");
  gc->add_option("--config", config_path, "JSON config file");
  gc->add_option("--out", out_dir, "output directory");

  auto* sp = app.add_subcommand("spectrum", "bare trimer eigensystem tables");
  sp->add_option("--preset", preset, "d2 or d3");
  sp->add_option("--nu", nu, "outer transition frequency (THz)");
  sp->add_option("--nu2", nu2, "middle transition frequency (THz)");
  sp->add_option("--v", v, "nearest-neighbour coupling (GHz)");
  sp->add_option("--v13", v13, "outer-pair coupling (GHz)");
  sp->add_option("--out", out_dir, "output directory");

  auto* me = app.add_subcommand("mermin", "maximize the Mermin (3,2,2) value");
  me->add_option("--state", state_spec, "named preset, bitstring, or JSON file")
      ->required();
  me->add_option("--grid", grid, "grid points per angle");
  me->add_option("--top-k", topk, "refinement seeds");

  auto* ev = app.add_subcommand("evolve", "custom undriven evolution from a config");
  ev->add_option("--config", config_path, "JSON config file")->required();
  ev->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (grid > 0) cfg.mermin_grid_points = grid;
    if (topk > 0) cfg.mermin_top_k = topk;

    if (*sc) return cmd_scenario(name, cfg);
    if (*su) return cmd_suite(cfg);
    if (*ge) {
      if (!*gc) {
        std::cerr << "geometry: missing subcommand (couplings)\n";
        return 2;
      }
      return cmd_geometry_couplings(preset, r_min, r_max, steps, cfg);
    }
    if (*sp) return cmd_spectrum(sp->count("--preset") ? preset : "", nu, nu2, v, v13, cfg);
    if (*me) return cmd_mermin(state_spec, cfg);
    if (*ev) return cmd_evolve(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace molq
