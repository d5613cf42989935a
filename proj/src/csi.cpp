#include "npisim/csi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "npisim/errors.hpp"
#include "npisim/units.hpp"

namespace npisim {

double SinrQuantizer::cqi_to_sinr_db(int cqi) const {
  return slope_db * cqi + intercept_db;
}

int SinrQuantizer::sinr_to_cqi(double sinr_db) const {
  // floor-inverse by scanning the 16 levels; avoids FP division edge cases
  // at the exact mapping points
  int cqi = 0;
  for (int c = 1; c <= max_cqi; ++c)
    if (cqi_to_sinr_db(c) <= sinr_db) cqi = c;
  return cqi;
}

void SinrQuantizer::validate() const {
  if (!(slope_db > 0.0)) throw ConfigError("cqi_slope_db must be positive");
  if (!std::isfinite(intercept_db))
    throw ConfigError("cqi_intercept_db must be finite");
  if (max_cqi < 1) throw ConfigError("max_cqi must be >= 1");
}

double effective_sinr_linear(std::span<const double> linear_sinrs,
                             double beta) {
  if (linear_sinrs.empty())
    throw ConfigError("effective SINR of an empty resource set");
  if (!(beta > 0.0)) throw ConfigError("eesm_beta must be positive");
  double min_sinr = std::numeric_limits<double>::infinity();
  for (double g : linear_sinrs) min_sinr = std::min(min_sinr, g);
  double acc = 0.0;
  for (double g : linear_sinrs) acc += std::exp(-(g - min_sinr) / beta);
  return min_sinr -
         beta * std::log(acc / static_cast<double>(linear_sinrs.size()));
}

double effective_sinr_db(const ResourceGrid& grid,
                         const ChannelRealization& realization,
                         std::span<const std::uint32_t> res, double beta) {
  if (res.empty())
    throw ConfigError("effective SINR of an empty resource set");
  const int n_sc = grid.config().num_subcarriers();
  std::vector<double> sinrs(res.size());
  for (size_t i = 0; i < res.size(); ++i) {
    const size_t re = res[i];
    const double gain =
        realization.subcarrier_gain[re % static_cast<size_t>(n_sc)];
    sinrs[i] = grid.signal_power[re] * gain /
               (grid.interference_power[re] + grid.noise_power);
  }
  return lin_to_db(effective_sinr_linear(sinrs, beta));
}

double pilot_sinr_estimate_db(const ResourceGrid& grid,
                              const ChannelRealization& realization,
                              double beta) {
  if (grid.pilot_res().empty())
    throw ConfigError("grid has no pilot REs to estimate from");
  return effective_sinr_db(grid, realization, grid.pilot_res(), beta);
}

double data_sinr_effective_db(const ResourceGrid& grid,
                              const ChannelRealization& realization,
                              double beta) {
  if (grid.data_res().empty())
    throw ConfigError("grid has no data REs");
  return effective_sinr_db(grid, realization, grid.data_res(), beta);
}

void FeedbackConfig::validate() const {
  if (period_subframes < 1)
    throw ConfigError("csi_period_sf must be >= 1");
  if (delay_subframes < 0) throw ConfigError("csi_delay_sf must be >= 0");
  if (initial_cqi < 0 || initial_cqi > 15)
    throw ConfigError("initial_cqi must be in [0, 15]");
  if (!(eesm_beta > 0.0)) throw ConfigError("eesm_beta must be positive");
}

std::optional<long> usable_report_subframe(const FeedbackConfig& config,
                                           long subframe) {
  const long latest = subframe - config.delay_subframes;
  if (latest < 0) return std::nullopt;
  return (latest / config.period_subframes) * config.period_subframes;
}

FeedbackLoop::FeedbackLoop(FeedbackConfig config) : config_(config) {
  config_.validate();
}

bool FeedbackLoop::report_due(long subframe) const {
  return subframe % config_.period_subframes == 0;
}

void FeedbackLoop::submit(const CqiReport& report) { pending_ = report; }

void FeedbackLoop::promote(long subframe) {
  if (pending_ &&
      pending_->generated_subframe + config_.delay_subframes <= subframe) {
    active_ = pending_;
    pending_.reset();
  }
}

int FeedbackLoop::current_cqi(long subframe) {
  promote(subframe);
  return active_ ? active_->cqi : config_.initial_cqi;
}

std::optional<CqiReport> FeedbackLoop::current_report(long subframe) {
  promote(subframe);
  return active_;
}

}  // namespace npisim
