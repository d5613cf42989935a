#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "npisim/config.hpp"
#include "npisim/sim.hpp"

namespace npisim {

inline constexpr const char* kToolVersion = "npisim 0.1.0";

// Writes via a temp file + rename in the target directory, so readers never
// observe a partial file.
void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content);

// Sweep results. CSV columns: strategy, actual_sinr_db, bler,
// throughput_mbps, median_cqi, median_est_sinr_db, mean_retx_latency_ms,
// analytic_latency_ms, capped_latency_ms, drop_rate. The JSON mirror
// carries the full PointMetrics rows plus the config.
std::string sweep_csv(const std::vector<PointMetrics>& rows,
                      const ParsedScenario& parsed);
std::string sweep_json(const std::vector<PointMetrics>& rows,
                       const ParsedScenario& parsed);

// Grid layout dump: subcarrier, symbol, kind.
std::string grid_csv(const ResourceGrid& grid, const ParsedScenario& parsed);

// Analytic vs capped latency table: bler, analytic_ms, capped_ms,
// mean_retx. Rejects bler >= 1 (the analytic mean diverges).
std::string latency_table_csv(const std::vector<double>& blers,
                              const HarqConfig& harq,
                              const ParsedScenario& parsed);

// Calibration report: strategy, target_sinr_db, total_power (linear and
// dBm), per-RE power, tone count.
std::string calibrate_csv(const ScenarioConfig& scenario,
                          const ParsedScenario& parsed);

}  // namespace npisim
