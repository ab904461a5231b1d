#ifndef MOLQ_CONFIG_HPP
#define MOLQ_CONFIG_HPP

#include <optional>
#include <string>

#include "molq/geometry.hpp"

namespace molq {

/// Run configuration. Every physical override carries its unit in the key
/// name (`_ghz`, `_thz`, `_ps`, `_ns`, `_nm`, `_debye`); unknown keys are
/// rejected. Fields left unset fall back to the scenario defaults.
struct RunConfig {
  std::string scenario;
  std::string output_dir;
  int record_decimation = 0;  // 0 = automatic

  std::optional<double> v_ghz;
  std::optional<double> v13_ghz;
  std::optional<double> delta_minus_ghz;
  std::optional<double> gamma_ghz;
  std::optional<double> gamma12_ghz;
  std::optional<double> gamma13_ghz;
  std::optional<double> omega_ghz;
  std::optional<double> nu_laser_thz;
  std::optional<double> t_final_ps;
  std::optional<double> dt_ps;
  std::optional<int> mermin_grid_points;
  std::optional<int> mermin_top_k;

  // Used by the `evolve` subcommand.
  std::optional<std::string> system;         // "dimer" or "trimer"
  std::optional<std::string> initial_state;  // bitstring, e.g. "01"

  std::optional<MolecularArray> geometry;

  bool operator==(const RunConfig& other) const;
};

/// Parses the JSON configuration document. Throws std::invalid_argument with
/// key/position context on parse errors, unknown keys, or invalid values.
RunConfig parse_config(const std::string& text);

/// Serializes with stable key order; parse(emit(c)) == c.
std::string emit_config(const RunConfig& config);

}  // namespace molq

#endif
