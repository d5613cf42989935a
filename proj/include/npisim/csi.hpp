#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "npisim/channel.hpp"
#include "npisim/grid.hpp"

namespace npisim {

// Affine SINR <-> CQI mapping, SINR_dB = slope * CQI + intercept. CQI 0 is
// the outage report. sinr_to_cqi is the floor-inverse: the highest CQI
// whose mapping SINR does not exceed the input.
struct SinrQuantizer {
  double slope_db = 2.11;
  double intercept_db = -9.0;
  int max_cqi = 15;

  double cqi_to_sinr_db(int cqi) const;
  int sinr_to_cqi(double sinr_db) const;

  void validate() const;
  bool operator==(const SinrQuantizer&) const = default;
};

// Exponential effective SINR mapping: -beta * ln(mean(exp(-g_i / beta)))
// over linear per-RE SINRs. Evaluated in log-sum-exp form so widely spread
// inputs cannot underflow to -inf.
double effective_sinr_linear(std::span<const double> linear_sinrs,
                             double beta);

// Effective SINR over an explicit RE subset, in dB.
double effective_sinr_db(const ResourceGrid& grid,
                         const ChannelRealization& realization,
                         std::span<const std::uint32_t> res, double beta);

// What the receiver's pilot-aided estimator sees: the effective SINR
// aggregated over pilot REs only. Interference that avoids pilots is
// invisible here by construction.
double pilot_sinr_estimate_db(const ResourceGrid& grid,
                              const ChannelRealization& realization,
                              double beta);

// Ground truth for block decoding: effective SINR over the allocated data
// REs. Never fed back.
double data_sinr_effective_db(const ResourceGrid& grid,
                              const ChannelRealization& realization,
                              double beta);

struct CqiReport {
  int cqi = 0;
  long generated_subframe = 0;
  double estimated_sinr_db = 0.0;
};

struct FeedbackConfig {
  int period_subframes = 10;
  int delay_subframes = 4;
  int initial_cqi = 15;
  double eesm_beta = 1.0;

  void validate() const;
  bool operator==(const FeedbackConfig&) const = default;
};

// Generation subframe of the report in use at `subframe`: the newest
// t' = k * period with t' + delay <= subframe. Empty before the first
// report becomes usable.
std::optional<long> usable_report_subframe(const FeedbackConfig& config,
                                           long subframe);

// Periodic delayed feedback state driven by the per-trial loop. Queries
// must be made with non-decreasing subframe indices.
class FeedbackLoop {
 public:
  explicit FeedbackLoop(FeedbackConfig config);

  bool report_due(long subframe) const;
  void submit(const CqiReport& report);

  int current_cqi(long subframe);
  std::optional<CqiReport> current_report(long subframe);

 private:
  FeedbackConfig config_;
  std::optional<CqiReport> active_;
  std::optional<CqiReport> pending_;
  void promote(long subframe);
};

}  // namespace npisim
