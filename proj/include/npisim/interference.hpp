#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "npisim/grid.hpp"

namespace npisim {

// Multi-tone interference strategies. PilotTones hits pilot REs only and
// FreqDomainNpi/TimeDomainNpi hit data REs only; Barrage covers the whole
// grid. Power is a total budget split equally across all targeted REs.
enum class Strategy : std::uint8_t {
  None,
  PilotTones,
  FreqDomainNpi,
  TimeDomainNpi,
  Barrage,
};

const char* to_string(Strategy strategy);
Strategy strategy_from_string(const std::string& name);

struct InterferenceProfile {
  Strategy strategy = Strategy::None;
  double total_power = 0.0;  // linear
  int tone_spacing = 1;      // FD modes: every k-th non-pilot subcarrier
  double duty_cycle = 1.0;   // TD-NPI: fraction of non-pilot symbols hit

  void validate() const;
  bool operator==(const InterferenceProfile&) const = default;
};

// Subcarriers that carry a pilot in at least one pilot symbol, and their
// complement. Under the default layout these are 200 and 400 of the 600
// subcarriers respectively.
std::vector<int> pilot_subcarriers(const GridConfig& config);
std::vector<int> non_pilot_subcarriers(const GridConfig& config);

// Deterministic pulsed-interference symbol mask: floor(duty * M) of the M
// non-pilot symbols, evenly spaced. Never contains a pilot symbol.
std::vector<int> td_npi_symbols(const GridConfig& config, double duty_cycle);

// REs receiving interference power under the profile (sorted).
std::vector<std::uint32_t> targeted_res(const ResourceGrid& grid,
                                        const InterferenceProfile& profile);

// Number of distinct subcarriers (tones) the strategy occupies. Barrage
// covers every subcarrier, which is what makes it need three times the
// total power of a 1/3-band strategy at equal per-tone power.
int tone_count(const GridConfig& config, const InterferenceProfile& profile);

double total_power_for_per_tone(const GridConfig& config,
                                const InterferenceProfile& profile,
                                double per_tone_power);

// Returns a copy of the grid with interference_power set to
// total_power / |targeted| on every targeted RE and 0 elsewhere.
ResourceGrid apply_interference(const ResourceGrid& grid,
                                const InterferenceProfile& profile);

}  // namespace npisim
