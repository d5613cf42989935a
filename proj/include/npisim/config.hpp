#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "npisim/sim.hpp"

namespace npisim {

// JSON configuration boundary. Keys are flat; an empty object yields the
// default 10 MHz scenario (CSI period 10 ms, HARQ cap 4, tau_wait 8 ms).
// All dB/dBm conversion happens here; the core modules are linear-only.
//
// Keys:
//   grid:    num_rb, subcarriers_per_rb, symbols_per_subframe,
//            pilot_symbol_indices, pilot_subcarrier_period,
//            pilot_subcarrier_shifts, control_symbol_count
//   channel: snr_db, doppler_hz, channel_profile (flat|epa|tdl),
//            tap_delays_ns, tap_powers_db, seed
//   jammer:  strategy (none|pi|npi_fd|npi_td|barrage), tone_spacing,
//            duty_cycle, interference_power_dbm (optional; sweeps
//            calibrate power instead)
//   csi:     csi_period_sf, csi_delay_sf, initial_cqi, eesm_beta,
//            cqi_slope_db, cqi_intercept_db
//   link:    mcs_bler_slope, overhead_factor, mcs_table_csv
//   harq:    tau_wait_ms, max_retx, harq_mode (capped|unbounded)
//   sweep:   strategies, sweep_sinr_db, subframes_per_point, master_seed

struct ParsedScenario {
  ScenarioConfig scenario;
  // Explicit jammer power (linear), when interference_power_dbm was given.
  std::optional<double> explicit_power;

  bool operator==(const ParsedScenario&) const = default;
};

// Parses JSON text. Unknown keys and invariant violations throw
// ConfigError naming the offending key.
ParsedScenario parse_config_text(const std::string& json_text);

// Reads the file (missing/unreadable file throws ConfigError), then applies
// `key=value` overrides on top; an empty path means "defaults only".
ParsedScenario parse_config(const std::filesystem::path& path,
                            const std::vector<std::string>& overrides = {});

std::string serialize_config(const ParsedScenario& parsed);

// Single-line form embedded in output headers for reproducibility.
std::string config_summary(const ParsedScenario& parsed);

}  // namespace npisim
