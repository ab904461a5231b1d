#include "molq/config.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace molq {

using json = nlohmann::ordered_json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!known.count(item.key()))
      throw std::invalid_argument("config: unknown key \"" + item.key() +
                                  "\" in " + where);
  }
}

double require_positive(double v, const std::string& key) {
  if (!(v > 0))
    throw std::invalid_argument("config: \"" + key + "\" must be positive");
  return v;
}

template <typename T>
void read_opt(const json& obj, const char* key, std::optional<T>& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

Vec3 read_vec3(const json& arr, const std::string& key) {
  if (!arr.is_array() || arr.size() != 3)
    throw std::invalid_argument("config: \"" + key + "\" must be a 3-element array");
  return Vec3(arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>());
}

MolecularArray parse_geometry(const json& g) {
  reject_unknown_keys(g, {"refractive_index", "sites"}, "geometry");
  if (!g.contains("sites") || !g.at("sites").is_array() || g.at("sites").empty())
    throw std::invalid_argument("config: geometry needs a nonempty \"sites\" array");
  std::vector<DipoleSite> sites;
  for (const auto& s : g.at("sites")) {
    reject_unknown_keys(
        s, {"position_nm", "orientation", "dipole_debye", "nu_thz", "t1_ns"},
        "geometry site");
    const Vec3 pos = read_vec3(s.at("position_nm"), "position_nm");
    const Vec3 ori = read_vec3(s.at("orientation"), "orientation");
    const double debye = s.value("dipole_debye", 10.0);
    const double nu = s.value("nu_thz", 522.0);
    const double t1 = s.value("t1_ns", 5.8);
    sites.emplace_back(pos, ori, debye, nu, t1);
  }
  const double n = g.value("refractive_index", 1.5);
  return MolecularArray(std::move(sites), n);
}

json emit_geometry(const MolecularArray& a) {
  json g;
  g["refractive_index"] = a.refractive_index;
  g["sites"] = json::array();
  for (const auto& s : a.sites) {
    json site;
    site["position_nm"] = {s.position_nm.x(), s.position_nm.y(), s.position_nm.z()};
    site["orientation"] = {s.orientation.x(), s.orientation.y(), s.orientation.z()};
    site["dipole_debye"] = s.dipole_debye;
    site["nu_thz"] = s.nu_thz;
    site["t1_ns"] = s.t1_ns;
    g["sites"].push_back(site);
  }
  return g;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& other) const {
  auto geom_equal = [](const std::optional<MolecularArray>& a,
                       const std::optional<MolecularArray>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    if (a->size() != b->size() || a->refractive_index != b->refractive_index)
      return false;
    for (int i = 0; i < a->size(); ++i) {
      const auto& sa = a->sites[i];
      const auto& sb = b->sites[i];
      if (sa.position_nm != sb.position_nm || sa.orientation != sb.orientation ||
          sa.dipole_debye != sb.dipole_debye || sa.nu_thz != sb.nu_thz ||
          sa.t1_ns != sb.t1_ns)
        return false;
    }
    return true;
  };
  return scenario == other.scenario && output_dir == other.output_dir &&
         record_decimation == other.record_decimation && v_ghz == other.v_ghz &&
         v13_ghz == other.v13_ghz && delta_minus_ghz == other.delta_minus_ghz &&
         gamma_ghz == other.gamma_ghz && gamma12_ghz == other.gamma12_ghz &&
         gamma13_ghz == other.gamma13_ghz && omega_ghz == other.omega_ghz &&
         nu_laser_thz == other.nu_laser_thz && t_final_ps == other.t_final_ps &&
         dt_ps == other.dt_ps && mermin_grid_points == other.mermin_grid_points &&
         mermin_top_k == other.mermin_top_k && system == other.system &&
         initial_state == other.initial_state && geom_equal(geometry, other.geometry);
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: parse error: ") + e.what());
  }
  if (!doc.is_object())
    throw std::invalid_argument("config: document must be a JSON object");

  static const std::set<std::string> known = {
      "scenario",      "output_dir",      "record_decimation",
      "v_ghz",         "v13_ghz",         "delta_minus_ghz",
      "gamma_ghz",     "gamma12_ghz",     "gamma13_ghz",
      "omega_ghz",     "nu_laser_thz",    "t_final_ps",
      "dt_ps",         "mermin_grid_points", "mermin_top_k",
      "system",        "initial_state",   "geometry"};
  reject_unknown_keys(doc, known, "top level");

  RunConfig c;
  if (doc.contains("scenario")) c.scenario = doc.at("scenario").get<std::string>();
  if (doc.contains("output_dir")) c.output_dir = doc.at("output_dir").get<std::string>();
  if (doc.contains("record_decimation")) {
    c.record_decimation = doc.at("record_decimation").get<int>();
    if (c.record_decimation < 0)
      throw std::invalid_argument("config: \"record_decimation\" must be >= 0");
  }
  read_opt(doc, "v_ghz", c.v_ghz);
  read_opt(doc, "v13_ghz", c.v13_ghz);
  read_opt(doc, "delta_minus_ghz", c.delta_minus_ghz);
  read_opt(doc, "gamma_ghz", c.gamma_ghz);
  read_opt(doc, "gamma12_ghz", c.gamma12_ghz);
  read_opt(doc, "gamma13_ghz", c.gamma13_ghz);
  read_opt(doc, "omega_ghz", c.omega_ghz);
  read_opt(doc, "nu_laser_thz", c.nu_laser_thz);
  read_opt(doc, "t_final_ps", c.t_final_ps);
  read_opt(doc, "dt_ps", c.dt_ps);
  read_opt(doc, "mermin_grid_points", c.mermin_grid_points);
  read_opt(doc, "mermin_top_k", c.mermin_top_k);
  read_opt(doc, "system", c.system);
  read_opt(doc, "initial_state", c.initial_state);

  if (c.gamma_ghz) require_positive(*c.gamma_ghz, "gamma_ghz");
  if (c.omega_ghz && *c.omega_ghz < 0)
    throw std::invalid_argument("config: \"omega_ghz\" must be >= 0");
  if (c.nu_laser_thz) require_positive(*c.nu_laser_thz, "nu_laser_thz");
  if (c.t_final_ps) require_positive(*c.t_final_ps, "t_final_ps");
  if (c.dt_ps) require_positive(*c.dt_ps, "dt_ps");
  if (c.mermin_grid_points && *c.mermin_grid_points < 2)
    throw std::invalid_argument("config: \"mermin_grid_points\" must be >= 2");
  if (c.mermin_top_k && *c.mermin_top_k < 1)
    throw std::invalid_argument("config: \"mermin_top_k\" must be >= 1");

  if (doc.contains("geometry")) c.geometry = parse_geometry(doc.at("geometry"));
  return c;
}

std::string emit_config(const RunConfig& c) {
  json doc;
  if (!c.scenario.empty()) doc["scenario"] = c.scenario;
  if (!c.output_dir.empty()) doc["output_dir"] = c.output_dir;
  if (c.record_decimation != 0) doc["record_decimation"] = c.record_decimation;
  auto put = [&doc](const char* key, const auto& opt) {
    if (opt) doc[key] = *opt;
  };
  put("v_ghz", c.v_ghz);
  put("v13_ghz", c.v13_ghz);
  put("delta_minus_ghz", c.delta_minus_ghz);
  put("gamma_ghz", c.gamma_ghz);
  put("gamma12_ghz", c.gamma12_ghz);
  put("gamma13_ghz", c.gamma13_ghz);
  put("omega_ghz", c.omega_ghz);
  put("nu_laser_thz", c.nu_laser_thz);
  put("t_final_ps", c.t_final_ps);
  put("dt_ps", c.dt_ps);
  put("mermin_grid_points", c.mermin_grid_points);
  put("mermin_top_k", c.mermin_top_k);
  put("system", c.system);
  put("initial_state", c.initial_state);
  if (c.geometry) doc["geometry"] = emit_geometry(*c.geometry);
  return doc.dump(2) + "\n";
}

}  // namespace molq
