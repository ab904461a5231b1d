#ifndef MOLQ_SCENARIOS_HPP
#define MOLQ_SCENARIOS_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "molq/config.hpp"
#include "molq/dynamics.hpp"
#include "molq/quantify.hpp"

namespace molq {

/// One summary metric: measured value against an expectation.
/// `comparison` is one of "abs" (|value - expected| <= tolerance),
/// "rel" (|value - expected| <= tolerance * |expected|),
/// "ge" (value >= expected) or "le" (value <= expected).
/// `source` records where the expectation comes from: "reported" for the
/// characterised values of this molecular system, "analytic" for closed-form
/// results, "exact" for definitional identities.
struct MetricResult {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string comparison;
  std::string source;
  bool passed = false;
};

MetricResult check_metric(const std::string& name, double value, double expected,
                          double tolerance, const std::string& comparison,
                          const std::string& source);

/// Named time-series column; real-valued columns keep a zero imaginary part
/// and are written as a single CSV column, complex ones as _re/_im pairs.
struct Column {
  std::string name;
  bool is_complex = false;
  std::vector<cd> values;
};

struct ScenarioResult {
  std::string name;
  nlohmann::ordered_json parameters;  // effective parameter echo
  double time_scale_rad_per_ps = 0.0; // t_scaled = t_ps * this
  std::vector<double> times_ps;
  std::vector<Column> columns;
  std::vector<MetricResult> metrics;

  bool passed() const;
};

ScenarioResult run_swap_gate(const RunConfig& cfg = {});
ScenarioResult run_swap_longtime(const RunConfig& cfg = {});
ScenarioResult run_bell_psi_minus(const RunConfig& cfg = {});
ScenarioResult run_phi_generation(const RunConfig& cfg = {});
ScenarioResult run_two_photon(const RunConfig& cfg = {});

enum class TrimerDriveRegime { detuned, resonant };  // V/Delta- = 0.1 or 1

ScenarioResult run_trimer_driven(TrimerDriveRegime regime, double omega_ghz,
                                 const RunConfig& cfg = {});
ScenarioResult run_trimer_w(const RunConfig& cfg = {});
ScenarioResult run_nonlocality_suite(const RunConfig& cfg = {});

/// Registry used by the CLI: scenario names in suite order.
std::vector<std::string> scenario_names();
ScenarioResult run_scenario(const std::string& name, const RunConfig& cfg = {});

/// Writes <name>_timeseries.csv and <name>_summary.json under `dir`.
void write_outputs(const ScenarioResult& result, const std::string& dir);

}  // namespace molq

#endif
