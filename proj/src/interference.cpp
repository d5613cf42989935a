#include "npisim/interference.hpp"

#include <algorithm>
#include <cmath>

#include "npisim/errors.hpp"

namespace npisim {

const char* to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::None:
      return "none";
    case Strategy::PilotTones:
      return "pi";
    case Strategy::FreqDomainNpi:
      return "npi_fd";
    case Strategy::TimeDomainNpi:
      return "npi_td";
    case Strategy::Barrage:
      return "barrage";
  }
  return "?";
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "none") return Strategy::None;
  if (name == "pi") return Strategy::PilotTones;
  if (name == "npi_fd") return Strategy::FreqDomainNpi;
  if (name == "npi_td") return Strategy::TimeDomainNpi;
  if (name == "barrage") return Strategy::Barrage;
  throw ConfigError("unknown strategy '" + name +
                    "' (expected none|pi|npi_fd|npi_td|barrage)");
}

void InterferenceProfile::validate() const {
  if (!(total_power >= 0.0) || !std::isfinite(total_power))
    throw ConfigError("interference total_power must be finite and >= 0");
  if (tone_spacing <= 0) throw ConfigError("tone_spacing must be positive");
  if (!(duty_cycle > 0.0) || duty_cycle > 1.0)
    throw ConfigError("duty_cycle must be in (0, 1]");
}

std::vector<int> pilot_subcarriers(const GridConfig& config) {
  std::vector<bool> is_pilot(static_cast<size_t>(config.num_subcarriers()),
                             false);
  for (int shift : config.pilot_subcarrier_shifts)
    for (int sc = shift; sc < config.num_subcarriers();
         sc += config.pilot_subcarrier_period)
      is_pilot[static_cast<size_t>(sc)] = true;
  std::vector<int> out;
  for (int sc = 0; sc < config.num_subcarriers(); ++sc)
    if (is_pilot[static_cast<size_t>(sc)]) out.push_back(sc);
  return out;
}

std::vector<int> non_pilot_subcarriers(const GridConfig& config) {
  std::vector<bool> is_pilot(static_cast<size_t>(config.num_subcarriers()),
                             false);
  for (int sc : pilot_subcarriers(config)) is_pilot[static_cast<size_t>(sc)] = true;
  std::vector<int> out;
  for (int sc = 0; sc < config.num_subcarriers(); ++sc)
    if (!is_pilot[static_cast<size_t>(sc)]) out.push_back(sc);
  return out;
}

std::vector<int> td_npi_symbols(const GridConfig& config, double duty_cycle) {
  if (!(duty_cycle > 0.0) || duty_cycle > 1.0)
    throw ConfigError("duty_cycle must be in (0, 1]");
  std::vector<int> non_pilot;
  for (int sym = 0; sym < config.symbols_per_subframe; ++sym)
    if (std::find(config.pilot_symbol_indices.begin(),
                  config.pilot_symbol_indices.end(),
                  sym) == config.pilot_symbol_indices.end())
      non_pilot.push_back(sym);
  const int m = static_cast<int>(non_pilot.size());
  const int k = static_cast<int>(std::floor(duty_cycle * m));
  std::vector<int> out;
  out.reserve(static_cast<size_t>(k));
  // evenly spaced, deterministic
  for (int i = 0; i < k; ++i)
    out.push_back(non_pilot[static_cast<size_t>(i * m / k)]);
  return out;
}

namespace {

std::vector<int> fd_npi_tones(const GridConfig& config, int tone_spacing) {
  const std::vector<int> candidates = non_pilot_subcarriers(config);
  std::vector<int> out;
  for (size_t i = 0; i < candidates.size();
       i += static_cast<size_t>(tone_spacing))
    out.push_back(candidates[i]);
  return out;
}

}  // namespace

std::vector<std::uint32_t> targeted_res(const ResourceGrid& grid,
                                        const InterferenceProfile& profile) {
  profile.validate();
  const GridConfig& config = grid.config();
  std::vector<std::uint32_t> out;
  switch (profile.strategy) {
    case Strategy::None:
      break;
    case Strategy::PilotTones:
      out.assign(grid.pilot_res().begin(), grid.pilot_res().end());
      break;
    case Strategy::FreqDomainNpi: {
      std::vector<bool> tone(static_cast<size_t>(config.num_subcarriers()),
                             false);
      for (int sc : fd_npi_tones(config, profile.tone_spacing))
        tone[static_cast<size_t>(sc)] = true;
      for (std::uint32_t re : grid.data_res())
        if (tone[static_cast<size_t>(grid.subcarrier_of(static_cast<int>(re)))])
          out.push_back(re);
      break;
    }
    case Strategy::TimeDomainNpi: {
      std::vector<bool> burst(static_cast<size_t>(config.symbols_per_subframe),
                              false);
      for (int sym : td_npi_symbols(config, profile.duty_cycle))
        burst[static_cast<size_t>(sym)] = true;
      for (std::uint32_t re : grid.data_res())
        if (burst[static_cast<size_t>(grid.symbol_of(static_cast<int>(re)))])
          out.push_back(re);
      break;
    }
    case Strategy::Barrage:
      out.resize(static_cast<size_t>(config.total_res()));
      for (std::uint32_t re = 0;
           re < static_cast<std::uint32_t>(config.total_res()); ++re)
        out[re] = re;
      break;
  }
  return out;
}

int tone_count(const GridConfig& config, const InterferenceProfile& profile) {
  switch (profile.strategy) {
    case Strategy::None:
      return 0;
    case Strategy::PilotTones:
      return static_cast<int>(pilot_subcarriers(config).size());
    case Strategy::FreqDomainNpi:
      return static_cast<int>(
          fd_npi_tones(config, profile.tone_spacing).size());
    case Strategy::TimeDomainNpi:
      return config.num_subcarriers();
    case Strategy::Barrage:
      return config.num_subcarriers();
  }
  return 0;
}

double total_power_for_per_tone(const GridConfig& config,
                                const InterferenceProfile& profile,
                                double per_tone_power) {
  if (!(per_tone_power >= 0.0))
    throw ConfigError("per_tone_power must be >= 0");
  return per_tone_power * tone_count(config, profile);
}

ResourceGrid apply_interference(const ResourceGrid& grid,
                                const InterferenceProfile& profile) {
  profile.validate();
  ResourceGrid out = grid;
  std::fill(out.interference_power.begin(), out.interference_power.end(), 0.0);
  const std::vector<std::uint32_t> targets = targeted_res(grid, profile);
  if (targets.empty()) {
    if (profile.total_power > 0.0)
      throw ConfigError("interference profile targets no REs but has "
                        "total_power > 0");
    return out;
  }
  const double per_re = profile.total_power / static_cast<double>(targets.size());
  for (std::uint32_t re : targets) out.interference_power[re] = per_re;
  return out;
}

}  // namespace npisim
