#include "npisim/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "npisim/errors.hpp"
#include "npisim/output.hpp"
#include "npisim/units.hpp"

namespace npisim {

namespace {

using nlohmann::json;

// Reads known keys out of a flat JSON object and rejects everything else,
// so a typo in a config file fails loudly instead of silently using a
// default.
class KeyReader {
 public:
  explicit KeyReader(const json& object) : object_(object) {
    if (!object_.is_object())
      throw ConfigError("configuration root must be a JSON object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    const auto it = object_.find(key);
    if (it == object_.end()) return;
    seen_.insert(key);
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      throw ConfigError(std::string("config key '") + key +
                        "' has the wrong type");
    }
  }

  template <typename T>
  void read_optional(const char* key, std::optional<T>& out) {
    T value{};
    const auto it = object_.find(key);
    if (it == object_.end()) return;
    read(key, value);
    out = value;
  }

  bool has(const char* key) const { return object_.contains(key); }

  void finish() const {
    for (const auto& [key, value] : object_.items())
      if (!seen_.count(key))
        throw ConfigError("unknown config key '" + key + "'");
  }

 private:
  const json& object_;
  std::set<std::string> seen_;
};

ParsedScenario from_json(const json& j) {
  ParsedScenario parsed;
  ScenarioConfig& s = parsed.scenario;
  KeyReader r(j);

  r.read("num_rb", s.grid.num_rb);
  r.read("subcarriers_per_rb", s.grid.subcarriers_per_rb);
  r.read("symbols_per_subframe", s.grid.symbols_per_subframe);
  r.read("pilot_symbol_indices", s.grid.pilot_symbol_indices);
  r.read("pilot_subcarrier_period", s.grid.pilot_subcarrier_period);
  r.read("pilot_subcarrier_shifts", s.grid.pilot_subcarrier_shifts);
  r.read("control_symbol_count", s.grid.control_symbol_count);

  r.read("snr_db", s.channel.snr_db);
  r.read("doppler_hz", s.channel.doppler_hz);
  std::string profile = "epa";
  r.read("channel_profile", profile);
  if (profile == "flat") {
    s.channel.profile = ChannelProfile::FlatBlock;
  } else if (profile == "epa") {
    s.channel.profile = ChannelProfile::TappedDelayLine;
  } else if (profile == "tdl") {
    s.channel.profile = ChannelProfile::TappedDelayLine;
    r.read("tap_delays_ns", s.channel.tap_delays_ns);
    r.read("tap_powers_db", s.channel.tap_powers_db);
  } else {
    throw ConfigError("channel_profile must be flat|epa|tdl, got '" +
                      profile + "'");
  }
  if (profile != "tdl" && (r.has("tap_delays_ns") || r.has("tap_powers_db")))
    throw ConfigError("tap_delays_ns/tap_powers_db require "
                      "channel_profile=tdl");

  r.read("master_seed", s.master_seed);
  s.channel.seed = s.master_seed;
  r.read("seed", s.channel.seed);

  std::string strategy = to_string(s.interference.strategy);
  r.read("strategy", strategy);
  s.interference.strategy = strategy_from_string(strategy);
  r.read("tone_spacing", s.interference.tone_spacing);
  r.read("duty_cycle", s.interference.duty_cycle);
  std::optional<double> power_dbm;
  r.read_optional("interference_power_dbm", power_dbm);
  if (power_dbm) {
    parsed.explicit_power = dbm_to_mw(*power_dbm);
    s.interference.total_power = *parsed.explicit_power;
  }

  r.read("csi_period_sf", s.csi.period_subframes);
  r.read("csi_delay_sf", s.csi.delay_subframes);
  r.read("initial_cqi", s.csi.initial_cqi);
  r.read("eesm_beta", s.csi.eesm_beta);
  r.read("cqi_slope_db", s.quantizer.slope_db);
  r.read("cqi_intercept_db", s.quantizer.intercept_db);

  r.read("mcs_bler_slope", s.mcs_bler_slope);
  r.read("overhead_factor", s.overhead_factor);
  r.read_optional("mcs_table_csv", s.mcs_table_csv);

  r.read("tau_wait_ms", s.harq.tau_wait_ms);
  r.read("max_retx", s.harq.max_retx);
  std::string mode = to_string(s.harq.mode);
  r.read("harq_mode", mode);
  s.harq.mode = harq_mode_from_string(mode);

  std::vector<std::string> strategy_names;
  r.read("strategies", strategy_names);
  for (const std::string& name : strategy_names)
    s.strategies.push_back(strategy_from_string(name));
  r.read("sweep_sinr_db", s.sweep_sinr_db);
  r.read("subframes_per_point", s.subframes_per_point);

  r.finish();

  s.grid.validate();
  s.channel.validate();
  s.interference.validate();
  s.csi.validate();
  s.harq.validate();
  s.quantizer.validate();
  return parsed;
}

json to_json(const ParsedScenario& parsed) {
  const ScenarioConfig& s = parsed.scenario;
  json j;
  j["num_rb"] = s.grid.num_rb;
  j["subcarriers_per_rb"] = s.grid.subcarriers_per_rb;
  j["symbols_per_subframe"] = s.grid.symbols_per_subframe;
  j["pilot_symbol_indices"] = s.grid.pilot_symbol_indices;
  j["pilot_subcarrier_period"] = s.grid.pilot_subcarrier_period;
  j["pilot_subcarrier_shifts"] = s.grid.pilot_subcarrier_shifts;
  j["control_symbol_count"] = s.grid.control_symbol_count;

  j["snr_db"] = s.channel.snr_db;
  j["doppler_hz"] = s.channel.doppler_hz;
  if (s.channel.profile == ChannelProfile::FlatBlock) {
    j["channel_profile"] = "flat";
  } else {
    j["channel_profile"] = "tdl";
    j["tap_delays_ns"] = s.channel.tap_delays_ns;
    j["tap_powers_db"] = s.channel.tap_powers_db;
  }
  j["seed"] = s.channel.seed;

  j["strategy"] = to_string(s.interference.strategy);
  j["tone_spacing"] = s.interference.tone_spacing;
  j["duty_cycle"] = s.interference.duty_cycle;
  if (parsed.explicit_power)
    j["interference_power_dbm"] = mw_to_dbm(*parsed.explicit_power);

  j["csi_period_sf"] = s.csi.period_subframes;
  j["csi_delay_sf"] = s.csi.delay_subframes;
  j["initial_cqi"] = s.csi.initial_cqi;
  j["eesm_beta"] = s.csi.eesm_beta;
  j["cqi_slope_db"] = s.quantizer.slope_db;
  j["cqi_intercept_db"] = s.quantizer.intercept_db;

  j["mcs_bler_slope"] = s.mcs_bler_slope;
  j["overhead_factor"] = s.overhead_factor;
  if (s.mcs_table_csv) j["mcs_table_csv"] = *s.mcs_table_csv;

  j["tau_wait_ms"] = s.harq.tau_wait_ms;
  j["max_retx"] = s.harq.max_retx;
  j["harq_mode"] = to_string(s.harq.mode);

  std::vector<std::string> strategy_names;
  for (Strategy strategy : s.strategies)
    strategy_names.push_back(to_string(strategy));
  j["strategies"] = strategy_names;
  j["sweep_sinr_db"] = s.sweep_sinr_db;
  j["subframes_per_point"] = s.subframes_per_point;
  j["master_seed"] = s.master_seed;
  return j;
}

}  // namespace

ParsedScenario parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

ParsedScenario parse_config(const std::filesystem::path& path,
                            const std::vector<std::string>& overrides) {
  json j = json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      j = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
      throw ConfigError("config file " + path.string() +
                        " is not valid JSON: " + e.what());
    }
  }
  if (!j.is_object())
    throw ConfigError("configuration root must be a JSON object");

  for (const std::string& override_kv : overrides) {
    const size_t eq = override_kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("override '" + override_kv +
                        "' is not of the form key=value");
    const std::string key = override_kv.substr(0, eq);
    const std::string value = override_kv.substr(eq + 1);
    json parsed_value;
    try {
      parsed_value = json::parse(value);
    } catch (const json::parse_error&) {
      parsed_value = value;  // bare string
    }
    j[key] = parsed_value;
  }
  return from_json(j);
}

std::string serialize_config(const ParsedScenario& parsed) {
  return to_json(parsed).dump(2) + "\n";
}

std::string config_summary(const ParsedScenario& parsed) {
  return to_json(parsed).dump();
}

}  // namespace npisim
