#include "npisim/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <limits>

#include "npisim/errors.hpp"
#include "npisim/metrics.hpp"
#include "npisim/units.hpp"

namespace npisim {

namespace {

// Groups a region's REs by (subcarrier, signal power, interference+noise)
// so the per-subframe effective SINR costs one exp per group instead of one
// per RE. Grid powers are fixed per point, so the grouping is built once.
class RegionAggregator {
 public:
  RegionAggregator(const ResourceGrid& grid,
                   std::span<const std::uint32_t> res) {
    if (res.empty()) throw ConfigError("empty aggregation region");
    const int n_sc = grid.config().num_subcarriers();
    struct Key {
      double signal;
      double denom;
      double count;
    };
    std::vector<std::vector<Key>> per_sc(static_cast<size_t>(n_sc));
    for (std::uint32_t re : res) {
      const size_t sc = re % static_cast<size_t>(n_sc);
      const double signal = grid.signal_power[re];
      const double denom = grid.interference_power[re] + grid.noise_power;
      bool found = false;
      for (Key& k : per_sc[sc]) {
        if (k.signal == signal && k.denom == denom) {
          k.count += 1.0;
          found = true;
          break;
        }
      }
      if (!found) per_sc[sc].push_back({signal, denom, 1.0});
    }
    for (int sc = 0; sc < n_sc; ++sc)
      for (const Key& k : per_sc[static_cast<size_t>(sc)])
        groups_.push_back({sc, k.signal / k.denom, k.count});
    total_count_ = static_cast<double>(res.size());
    scratch_.resize(groups_.size());
  }

  double effective_linear(const ChannelRealization& realization,
                          double beta) const {
    double min_sinr = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < groups_.size(); ++i) {
      const double sinr =
          groups_[i].sinr_per_gain *
          realization.subcarrier_gain[static_cast<size_t>(groups_[i].subcarrier)];
      scratch_[i] = sinr;
      min_sinr = std::min(min_sinr, sinr);
    }
    double acc = 0.0;
    for (size_t i = 0; i < groups_.size(); ++i)
      acc += groups_[i].count * std::exp(-(scratch_[i] - min_sinr) / beta);
    return min_sinr - beta * std::log(acc / total_count_);
  }

  // RE-weighted mean channel gain over the region; unit expectation under
  // the normalized fading models.
  double mean_gain(const ChannelRealization& realization) const {
    double acc = 0.0;
    for (const Group& g : groups_)
      acc += g.count *
             realization.subcarrier_gain[static_cast<size_t>(g.subcarrier)];
    return acc / total_count_;
  }

 private:
  struct Group {
    int subcarrier;
    double sinr_per_gain;  // signal / (interference + noise)
    double count;
  };
  std::vector<Group> groups_;
  double total_count_ = 0.0;
  mutable std::vector<double> scratch_;
};

std::uint64_t point_salt(Strategy strategy, double target, int purpose) {
  const std::uint64_t s = static_cast<std::uint64_t>(strategy);
  const std::uint64_t t = std::bit_cast<std::uint64_t>(target);
  return Rng::derive(s * 0x100 + static_cast<std::uint64_t>(purpose),
                     t);
}

bool static_channel(const ChannelConfig& ch) {
  return ch.profile == ChannelProfile::FlatBlock && ch.doppler_hz == 0.0;
}

std::span<const std::uint32_t> calibration_region(const ResourceGrid& grid,
                                                  Strategy strategy) {
  // The sweep axis is the effective SINR over the REs the strategy
  // degrades: the data REs for NPI/barrage, the pilot REs for pilot-tone
  // interference (which by construction never touches data REs).
  return strategy == Strategy::PilotTones ? grid.pilot_res()
                                          : grid.data_res();
}

ResourceGrid build_point_grid(const ScenarioConfig& scenario,
                              Strategy strategy, double total_power) {
  ResourceGrid grid(scenario.grid);
  apply_snr(grid, scenario.channel.snr_db);
  InterferenceProfile profile = scenario.interference;
  profile.strategy = strategy;
  profile.total_power = total_power;
  return apply_interference(grid, profile);
}

McsTable point_mcs_table(const ScenarioConfig& scenario) {
  if (scenario.mcs_table_csv)
    return McsTable::from_csv(*scenario.mcs_table_csv, scenario.quantizer);
  return McsTable::standard(scenario.quantizer, scenario.mcs_bler_slope);
}

}  // namespace

std::vector<Strategy> ScenarioConfig::effective_strategies() const {
  if (!strategies.empty()) return strategies;
  return {interference.strategy};
}

void ScenarioConfig::validate() const {
  grid.validate();
  channel.validate();
  interference.validate();
  csi.validate();
  harq.validate();
  quantizer.validate();
  if (!(mcs_bler_slope > 0.0))
    throw ConfigError("mcs_bler_slope must be positive");
  if (!(overhead_factor > 0.0) || overhead_factor > 1.0)
    throw ConfigError("overhead_factor must be in (0, 1]");
  if (subframes_per_point < 1)
    throw ConfigError("subframes_per_point must be >= 1");
}

double ceiling_bps(const ScenarioConfig& scenario) {
  const ResourceGrid grid(scenario.grid);
  const McsTable table = point_mcs_table(scenario);
  return table.max_efficiency() *
         static_cast<double>(grid.data_res().size()) *
         scenario.overhead_factor / scenario.channel.subframe_duration_s;
}

double measure_effective_sinr_db(const ScenarioConfig& scenario,
                                 Strategy strategy, double total_power,
                                 long num_subframes) {
  const ResourceGrid grid = build_point_grid(scenario, strategy, total_power);
  const RegionAggregator region(grid, calibration_region(grid, strategy));

  ChannelConfig ch = scenario.channel;
  // common random numbers: one calibration stream per strategy, reused for
  // every probed power so the bisected function is smooth
  ch.seed = Rng::derive(scenario.master_seed,
                        0xCA1 + static_cast<std::uint64_t>(strategy));
  const long n = static_channel(ch) ? 1 : num_subframes;
  ChannelModel channel(ch, scenario.grid.num_subcarriers());

  // Ratio estimate of the long-run mean: dividing by the sample mean gain
  // (true mean exactly 1) cancels the slow-fading noise of a finite
  // averaging window. Exact whenever the region's per-RE SINRs are uniform,
  // since the effective SINR is then linear in the flat gain.
  double mean_linear = 0.0;
  double mean_gain = 0.0;
  for (long t = 0; t < n; ++t) {
    const ChannelRealization real = channel.next();
    mean_linear += region.effective_linear(real, scenario.csi.eesm_beta);
    mean_gain += region.mean_gain(real);
  }
  return lin_to_db(mean_linear / mean_gain);
}

double calibrate_interference_power(const ScenarioConfig& scenario,
                                    Strategy strategy,
                                    double target_actual_sinr_db) {
  constexpr long kCalSubframes = 1000;
  constexpr double kTolDb = 0.02;

  const double baseline_db =
      measure_effective_sinr_db(scenario, strategy, 0.0, kCalSubframes);
  if (strategy == Strategy::None) {
    if (std::abs(target_actual_sinr_db - baseline_db) > 0.1)
      throw ConfigError("strategy none cannot move the effective SINR");
    return 0.0;
  }
  if (target_actual_sinr_db > baseline_db + kTolDb)
    throw ConfigError("target SINR above the interference-free level");
  if (target_actual_sinr_db >= baseline_db - kTolDb) return 0.0;

  // initial guess from a uniform-interference solve, then bracket upward
  const ResourceGrid probe = build_point_grid(scenario, strategy, 0.0);
  InterferenceProfile profile = scenario.interference;
  profile.strategy = strategy;
  const double n_targeted =
      static_cast<double>(targeted_res(probe, profile).size());
  if (n_targeted == 0.0)
    throw ConfigError("interference profile targets no REs");
  const double target_linear = db_to_lin(target_actual_sinr_db);
  double hi = n_targeted *
              std::max(1.0 / target_linear - probe.noise_power, 1e-9);
  double lo = 0.0;
  bool bracketed = false;
  for (int i = 0; i < 80; ++i) {
    if (measure_effective_sinr_db(scenario, strategy, hi, kCalSubframes) <
        target_actual_sinr_db) {
      bracketed = true;
      break;
    }
    lo = hi;
    hi *= 4.0;
  }
  if (!bracketed)
    // untargeted clean REs bound the effective SINR from below; no finite
    // power reaches a target under that floor
    throw ConfigError(
        "target SINR below the floor reachable by this interference "
        "profile (clean-RE dilution)");

  double mid = hi;
  for (int i = 0; i < 100; ++i) {
    mid = 0.5 * (lo + hi);
    const double got =
        measure_effective_sinr_db(scenario, strategy, mid, kCalSubframes);
    if (std::abs(got - target_actual_sinr_db) <= kTolDb) return mid;
    if (got > target_actual_sinr_db)
      lo = mid;  // too little interference
    else
      hi = mid;
  }
  return mid;
}

PointMetrics run_point_with_power(const ScenarioConfig& scenario,
                                  Strategy strategy, double total_power,
                                  double target_sinr_db) {
  scenario.validate();
  const ResourceGrid grid = build_point_grid(scenario, strategy, total_power);
  const McsTable table = point_mcs_table(scenario);
  const double beta = scenario.csi.eesm_beta;
  const int n_data = static_cast<int>(grid.data_res().size());

  const RegionAggregator pilot_agg(grid, grid.pilot_res());
  const RegionAggregator data_agg(grid, grid.data_res());
  const bool region_is_pilot = strategy == Strategy::PilotTones;

  ChannelConfig ch = scenario.channel;
  ch.seed = Rng::derive(scenario.master_seed,
                        point_salt(strategy, target_sinr_db, 0));
  ChannelModel channel(ch, scenario.grid.num_subcarriers());
  Rng harq_rng(Rng::derive(scenario.master_seed,
                           point_salt(strategy, target_sinr_db, 1)));
  FeedbackLoop feedback(scenario.csi);

  StreamingStats latency, n_retx, region_linear, region_gain;
  IntHistogram cqi_hist(0, scenario.quantizer.max_cqi);
  QuantileSketch raw_est;
  long long first_errors = 0;
  long long drops = 0;
  double bits = 0.0;

  const long n = scenario.subframes_per_point;
  for (long t = 0; t < n; ++t) {
    const ChannelRealization real = channel.next();

    double pilot_eff = 0.0;
    if (feedback.report_due(t) || region_is_pilot)
      pilot_eff = pilot_agg.effective_linear(real, beta);
    if (feedback.report_due(t)) {
      const double est_db = lin_to_db(pilot_eff);
      const int cqi = scenario.quantizer.sinr_to_cqi(est_db);
      feedback.submit({cqi, t, est_db});
      cqi_hist.update(cqi);
      raw_est.update(est_db);
    }

    const McsEntry& mcs = table.select(feedback.current_cqi(t));
    const double data_eff = data_agg.effective_linear(real, beta);
    const double bler = block_error_prob(mcs, lin_to_db(data_eff));
    const HarqRecord rec = run_block(1.0 - bler, scenario.harq, harq_rng);

    bits += delivered_bits(mcs, n_data, rec.delivered);
    if (!rec.first_attempt_ok()) ++first_errors;
    if (!rec.delivered) ++drops;
    latency.update(rec.latency_ms);
    n_retx.update(rec.n_retx);
    region_linear.update(region_is_pilot ? pilot_eff : data_eff);
    region_gain.update(region_is_pilot ? pilot_agg.mean_gain(real)
                                       : data_agg.mean_gain(real));
  }

  PointMetrics out;
  out.strategy = strategy;
  out.target_sinr_db = target_sinr_db;
  // same ratio estimate of the long-run operating SINR as calibration uses
  out.actual_sinr_db = lin_to_db(region_linear.mean / region_gain.mean);
  out.bler = static_cast<double>(first_errors) / static_cast<double>(n);
  out.throughput_bps = bits * scenario.overhead_factor /
                       (static_cast<double>(n) *
                        scenario.channel.subframe_duration_s);
  out.median_cqi = cqi_hist.median();
  out.median_est_sinr_db = scenario.quantizer.cqi_to_sinr_db(out.median_cqi);
  out.median_raw_estimate_db = raw_est.median();
  out.mean_retx_latency_ms = latency.mean;
  out.mean_n_retx = n_retx.mean;
  out.residual_drop_rate =
      static_cast<double>(drops) / static_cast<double>(n);
  out.calibrated_total_power = total_power;
  out.subframes = n;
  return out;
}

PointMetrics run_point(const ScenarioConfig& scenario, Strategy strategy,
                       double target_sinr_db) {
  const double power =
      calibrate_interference_power(scenario, strategy, target_sinr_db);
  return run_point_with_power(scenario, strategy, power, target_sinr_db);
}

std::vector<PointMetrics> run_sweep(const ScenarioConfig& scenario) {
  scenario.validate();
  for (Strategy s : scenario.effective_strategies())
    if (s != Strategy::None && scenario.sweep_sinr_db.empty())
      throw ConfigError("sweep_sinr_db must not be empty");
  struct Task {
    Strategy strategy;
    double target;
    bool calibrated;
  };
  std::vector<Task> tasks;
  for (Strategy strategy : scenario.effective_strategies()) {
    if (strategy == Strategy::None) {
      tasks.push_back({strategy, 0.0, false});
      continue;
    }
    for (double target : scenario.sweep_sinr_db)
      tasks.push_back({strategy, target, true});
  }

  std::vector<std::future<PointMetrics>> futures;
  futures.reserve(tasks.size());
  for (const Task& task : tasks) {
    futures.push_back(std::async(std::launch::async, [&scenario, task] {
      if (!task.calibrated) {
        const double baseline = measure_effective_sinr_db(
            scenario, Strategy::None, 0.0, 1000);
        return run_point_with_power(scenario, Strategy::None, 0.0, baseline);
      }
      return run_point(scenario, task.strategy, task.target);
    }));
  }

  std::vector<PointMetrics> rows;
  rows.reserve(futures.size());
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

}  // namespace npisim
