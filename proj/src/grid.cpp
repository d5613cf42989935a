#include "npisim/grid.hpp"

#include <algorithm>
#include <string>

#include "npisim/errors.hpp"
#include "npisim/units.hpp"

namespace npisim {

const char* to_string(ReKind kind) {
  switch (kind) {
    case ReKind::Pilot:
      return "pilot";
    case ReKind::Data:
      return "data";
    case ReKind::Control:
      return "control";
  }
  return "?";
}

void GridConfig::validate() const {
  if (num_rb <= 0) throw ConfigError("num_rb must be positive");
  if (subcarriers_per_rb <= 0)
    throw ConfigError("subcarriers_per_rb must be positive");
  if (symbols_per_subframe <= 0)
    throw ConfigError("symbols_per_subframe must be positive");
  if (pilot_subcarrier_period <= 0)
    throw ConfigError("pilot_subcarrier_period must be positive");
  if (pilot_symbol_indices.empty())
    throw ConfigError("pilot_symbol_indices must not be empty");
  if (pilot_subcarrier_shifts.size() != pilot_symbol_indices.size())
    throw ConfigError(
        "pilot_subcarrier_shifts must have one entry per pilot symbol");
  for (int s : pilot_symbol_indices) {
    if (s < 0 || s >= symbols_per_subframe)
      throw ConfigError("pilot_symbol_indices entry " + std::to_string(s) +
                        " outside [0, symbols_per_subframe)");
  }
  if (std::adjacent_find(pilot_symbol_indices.begin(),
                         pilot_symbol_indices.end()) !=
          pilot_symbol_indices.end() ||
      !std::is_sorted(pilot_symbol_indices.begin(),
                      pilot_symbol_indices.end()))
    throw ConfigError("pilot_symbol_indices must be sorted and distinct");
  for (int shift : pilot_subcarrier_shifts) {
    if (shift < 0 || shift >= pilot_subcarrier_period)
      throw ConfigError("pilot_subcarrier_shifts entry " +
                        std::to_string(shift) +
                        " outside [0, pilot_subcarrier_period)");
  }
  if (control_symbol_count < 0 || control_symbol_count > symbols_per_subframe)
    throw ConfigError("control_symbol_count outside [0, symbols_per_subframe]");
}

ResourceGrid::ResourceGrid(GridConfig config) : config_(std::move(config)) {
  config_.validate();
  const int n_sc = config_.num_subcarriers();
  const int n_re = config_.total_res();

  // shift per symbol, -1 for non-pilot symbols
  std::vector<int> shift_of(static_cast<size_t>(config_.symbols_per_subframe),
                            -1);
  for (size_t i = 0; i < config_.pilot_symbol_indices.size(); ++i)
    shift_of[static_cast<size_t>(config_.pilot_symbol_indices[i])] =
        config_.pilot_subcarrier_shifts[i];

  kinds_.resize(static_cast<size_t>(n_re));
  for (int sym = 0; sym < config_.symbols_per_subframe; ++sym) {
    for (int sc = 0; sc < n_sc; ++sc) {
      const int re = sym * n_sc + sc;
      ReKind k;
      if (shift_of[static_cast<size_t>(sym)] >= 0 &&
          sc % config_.pilot_subcarrier_period ==
              shift_of[static_cast<size_t>(sym)]) {
        k = ReKind::Pilot;
      } else if (sym < config_.control_symbol_count) {
        k = ReKind::Control;
      } else {
        k = ReKind::Data;
      }
      kinds_[static_cast<size_t>(re)] = k;
      auto& bucket = k == ReKind::Pilot    ? pilot_res_
                     : k == ReKind::Data   ? data_res_
                                           : control_res_;
      bucket.push_back(static_cast<std::uint32_t>(re));
    }
  }

  signal_power.assign(static_cast<size_t>(n_re), 1.0);
  interference_power.assign(static_cast<size_t>(n_re), 0.0);
  noise_power = 1.0;
}

ReKind ResourceGrid::kind(int subcarrier, int symbol) const {
  return kind_at(re_index(subcarrier, symbol));
}

void apply_snr(ResourceGrid& grid, double snr_db) {
  grid.noise_power = db_to_lin(-snr_db);
}

}  // namespace npisim
