#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "npisim/channel.hpp"
#include "npisim/csi.hpp"
#include "npisim/grid.hpp"
#include "npisim/harq.hpp"
#include "npisim/interference.hpp"
#include "npisim/linkadapt.hpp"

namespace npisim {

// Full closed-loop scenario. One point = (strategy, target SINR); the
// interferer power at each point is calibrated so the long-run effective
// SINR over the REs that strategy degrades hits the target.
struct ScenarioConfig {
  GridConfig grid;
  ChannelConfig channel;
  InterferenceProfile interference;
  FeedbackConfig csi;
  HarqConfig harq;
  SinrQuantizer quantizer;
  double mcs_bler_slope = 2.0;
  double overhead_factor = 0.85;  // unmodeled control/coding overhead
  std::optional<std::string> mcs_table_csv;

  std::vector<Strategy> strategies;   // defaults to {interference.strategy}
  std::vector<double> sweep_sinr_db;  // target actual-SINR points
  long subframes_per_point = 100000;
  std::uint64_t master_seed = 1;

  std::vector<Strategy> effective_strategies() const;
  void validate() const;
  bool operator==(const ScenarioConfig&) const = default;
};

// Aggregated results of one sweep point.
struct PointMetrics {
  Strategy strategy = Strategy::None;
  double target_sinr_db = 0.0;
  double actual_sinr_db = 0.0;       // measured over the calibration region
  double bler = 0.0;                 // first-transmission block error rate
  double throughput_bps = 0.0;
  int median_cqi = 0;
  double median_est_sinr_db = 0.0;   // SINR inferred from the median CQI
  double median_raw_estimate_db = 0.0;
  double mean_retx_latency_ms = 0.0;
  double mean_n_retx = 0.0;
  double residual_drop_rate = 0.0;   // blocks never delivered (capped mode)
  double calibrated_total_power = 0.0;  // linear
  long subframes = 0;
};

// Throughput when every subframe carries the top MCS successfully.
double ceiling_bps(const ScenarioConfig& scenario);

// Long-run effective SINR (dB of the mean linear effective SINR over
// subframes) seen on the strategy's calibration region at the given total
// interference power. Deterministic for a fixed scenario/strategy/power.
double measure_effective_sinr_db(const ScenarioConfig& scenario,
                                 Strategy strategy, double total_power,
                                 long num_subframes);

// Bisects the interferer's total power until the measured effective SINR
// hits the target within 0.1 dB. Strategy None accepts only a target equal
// to the interference-free SINR. Targets above the interference-free value
// throw ConfigError.
double calibrate_interference_power(const ScenarioConfig& scenario,
                                    Strategy strategy,
                                    double target_actual_sinr_db);

// Runs the closed loop for one calibrated point.
PointMetrics run_point(const ScenarioConfig& scenario, Strategy strategy,
                       double target_sinr_db);

// Same, with an explicitly chosen total interference power (no
// calibration); target_sinr_db is recorded as given for bookkeeping.
PointMetrics run_point_with_power(const ScenarioConfig& scenario,
                                  Strategy strategy, double total_power,
                                  double target_sinr_db);

// Every strategy x sweep point, in deterministic order. Points execute in
// parallel; per-point substreams are derived from the master seed, so the
// result does not depend on scheduling.
std::vector<PointMetrics> run_sweep(const ScenarioConfig& scenario);

}  // namespace npisim
