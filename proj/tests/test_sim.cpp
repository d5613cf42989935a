#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "npisim/csi.hpp"
#include "npisim/errors.hpp"
#include "npisim/sim.hpp"
#include "npisim/units.hpp"

using namespace npisim;

namespace {

ScenarioConfig static_flat_scenario() {
  ScenarioConfig s;
  s.channel.profile = ChannelProfile::FlatBlock;
  s.channel.doppler_hz = 0.0;
  s.channel.snr_db = 30.0;
  s.sweep_sinr_db = {0.0};
  s.subframes_per_point = 500;
  s.master_seed = 42;
  return s;
}

ScenarioConfig faded_scenario() {
  ScenarioConfig s;
  s.channel.profile = ChannelProfile::FlatBlock;
  s.channel.doppler_hz = 20.0;
  s.channel.snr_db = 30.0;
  s.sweep_sinr_db = {0.0};
  s.subframes_per_point = 300;
  s.master_seed = 7;
  return s;
}

}  // namespace

TEST_CASE("strategy none calibrates to zero power at the native SINR") {
  ScenarioConfig s = static_flat_scenario();
  const double native =
      measure_effective_sinr_db(s, Strategy::None, 0.0, 1000);
  CHECK(native == doctest::Approx(30.0).epsilon(1e-9));
  CHECK(calibrate_interference_power(s, Strategy::None, native) == 0.0);
  CHECK_THROWS_AS(calibrate_interference_power(s, Strategy::None, 10.0),
                  ConfigError);
}

TEST_CASE("barrage calibration to 0 dB puts unit interference on every RE") {
  // closed form at SNR 30: per-RE SINR = 1 / (I + 0.001) = 1 -> I = 0.999
  ScenarioConfig s = static_flat_scenario();
  const double power =
      calibrate_interference_power(s, Strategy::Barrage, 0.0);
  const double per_re = power / 8400.0;
  CHECK(per_re == doctest::Approx(1.0 - 1e-3).epsilon(0.01));
  CHECK(measure_effective_sinr_db(s, Strategy::Barrage, power, 1000) ==
        doctest::Approx(0.0).epsilon(0.05).scale(1.0));
}

TEST_CASE("clean-RE dilution floors the reachable NPI effective SINR") {
  // default FD-NPI leaves data REs on pilot-bearing subcarriers clean
  // (2400 of 8000); with beta = 1 the effective SINR cannot be pushed
  // below -ln(5600/8000) no matter the power
  ScenarioConfig s = static_flat_scenario();
  const double floor_db = lin_to_db(-std::log(5600.0 / 8000.0));
  CHECK(floor_db == doctest::Approx(-4.478).epsilon(0.001));
  const double above =
      calibrate_interference_power(s, Strategy::FreqDomainNpi,
                                   floor_db + 0.2);
  CHECK(above > 0.0);
  CHECK_THROWS_AS(calibrate_interference_power(s, Strategy::FreqDomainNpi,
                                               floor_db - 1.5),
                  ConfigError);
  // a sharper aggregation lowers the floor and makes the target reachable
  s.csi.eesm_beta = 0.5;
  const double power = calibrate_interference_power(
      s, Strategy::FreqDomainNpi, floor_db - 1.5);
  CHECK(power > 0.0);
}

TEST_CASE("sparse NPI needs more per-targeted-RE power than barrage") {
  // clean tones dilute the effective SINR, so the jammed tones must be
  // pushed further down to reach the same target
  ScenarioConfig s = static_flat_scenario();
  s.interference.tone_spacing = 2;  // half the non-pilot subcarriers
  s.csi.eesm_beta = 0.5;  // keeps 0 dB above this sparse layout's floor
  const double p_barrage =
      calibrate_interference_power(s, Strategy::Barrage, 0.0);
  const double p_npi =
      calibrate_interference_power(s, Strategy::FreqDomainNpi, 0.0);

  ResourceGrid grid(s.grid);
  InterferenceProfile barrage = s.interference;
  barrage.strategy = Strategy::Barrage;
  InterferenceProfile npi = s.interference;
  npi.strategy = Strategy::FreqDomainNpi;
  const double barrage_per_re =
      p_barrage / static_cast<double>(targeted_res(grid, barrage).size());
  const double npi_per_re =
      p_npi / static_cast<double>(targeted_res(grid, npi).size());
  CHECK(npi_per_re > barrage_per_re);
}

TEST_CASE("pilot-tone points calibrate against the pilot region") {
  ScenarioConfig s = static_flat_scenario();
  const double power =
      calibrate_interference_power(s, Strategy::PilotTones, 0.0);
  CHECK(power > 0.0);
  CHECK(measure_effective_sinr_db(s, Strategy::PilotTones, power, 1) ==
        doctest::Approx(0.0).epsilon(0.05).scale(1.0));
  // data REs stay clean, so a pilot-tone jammer cannot move the data SINR
  ResourceGrid grid(s.grid);
  apply_snr(grid, s.channel.snr_db);
  InterferenceProfile pi = s.interference;
  pi.strategy = Strategy::PilotTones;
  pi.total_power = power;
  const ResourceGrid jammed = apply_interference(grid, pi);
  ChannelRealization flat;
  flat.subcarrier_gain.assign(
      static_cast<size_t>(s.grid.num_subcarriers()), 1.0);
  CHECK(data_sinr_effective_db(jammed, flat, 1.0) ==
        doctest::Approx(30.0).epsilon(1e-9));
}

TEST_CASE("aggregated effective SINR equals the reference path") {
  // frozen tapped-delay-line draw gives distinct per-subcarrier gains;
  // the grouped fast path must agree with the per-RE reference exactly
  ScenarioConfig s;
  s.channel.profile = ChannelProfile::TappedDelayLine;
  s.channel.doppler_hz = 0.0;
  s.channel.snr_db = 25.0;
  s.interference.tone_spacing = 3;
  s.master_seed = 11;

  const double power = 500.0;
  const double via_aggregator =
      measure_effective_sinr_db(s, Strategy::FreqDomainNpi, power, 3);

  ResourceGrid grid(s.grid);
  apply_snr(grid, s.channel.snr_db);
  InterferenceProfile npi = s.interference;
  npi.strategy = Strategy::FreqDomainNpi;
  npi.total_power = power;
  const ResourceGrid jammed = apply_interference(grid, npi);

  ChannelConfig ch = s.channel;
  ch.seed = Rng::derive(s.master_seed,
                        0xCA1 + static_cast<std::uint64_t>(
                                    Strategy::FreqDomainNpi));
  ChannelModel model(ch, s.grid.num_subcarriers());
  double sum_linear = 0.0;
  double sum_gain = 0.0;
  for (int t = 0; t < 3; ++t) {
    const ChannelRealization real = model.next();
    sum_linear += db_to_lin(data_sinr_effective_db(jammed, real, 1.0));
    for (std::uint32_t re : jammed.data_res())
      sum_gain += real.gain_at(jammed.subcarrier_of(static_cast<int>(re))) /
                  static_cast<double>(jammed.data_res().size());
  }
  CHECK(via_aggregator ==
        doctest::Approx(lin_to_db(sum_linear / sum_gain)).epsilon(1e-12));
}

TEST_CASE("run_point is deterministic") {
  ScenarioConfig s = faded_scenario();
  const PointMetrics a =
      run_point_with_power(s, Strategy::FreqDomainNpi, 2000.0, 0.0);
  const PointMetrics b =
      run_point_with_power(s, Strategy::FreqDomainNpi, 2000.0, 0.0);
  CHECK(a.bler == b.bler);
  CHECK(a.throughput_bps == b.throughput_bps);
  CHECK(a.actual_sinr_db == b.actual_sinr_db);
  CHECK(a.mean_retx_latency_ms == b.mean_retx_latency_ms);
  CHECK(a.median_cqi == b.median_cqi);
  CHECK(a.median_raw_estimate_db == b.median_raw_estimate_db);
  CHECK(a.residual_drop_rate == b.residual_drop_rate);
}

TEST_CASE("sweeps are reproducible and order-insensitive") {
  ScenarioConfig s = faded_scenario();
  s.strategies = {Strategy::Barrage, Strategy::PilotTones};
  s.sweep_sinr_db = {10.0, 20.0};
  s.subframes_per_point = 200;
  const std::vector<PointMetrics> first = run_sweep(s);
  const std::vector<PointMetrics> second = run_sweep(s);
  REQUIRE(first.size() == 4);
  REQUIRE(second.size() == 4);
  for (size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].strategy == second[i].strategy);
    CHECK(first[i].target_sinr_db == second[i].target_sinr_db);
    CHECK(first[i].bler == second[i].bler);
    CHECK(first[i].actual_sinr_db == second[i].actual_sinr_db);
    CHECK(first[i].throughput_bps == second[i].throughput_bps);
    CHECK(first[i].mean_retx_latency_ms == second[i].mean_retx_latency_ms);
  }
}

TEST_CASE("the estimator is blind to NPI power in the full loop") {
  ScenarioConfig s = faded_scenario();
  s.subframes_per_point = 400;
  // same target value -> same channel substream, so the estimates must be
  // bit-identical no matter the jammer power
  const PointMetrics weak =
      run_point_with_power(s, Strategy::FreqDomainNpi, 10.0, 0.0);
  const PointMetrics strong =
      run_point_with_power(s, Strategy::FreqDomainNpi, 1e6, 0.0);
  CHECK(weak.median_raw_estimate_db == strong.median_raw_estimate_db);
  CHECK(weak.median_cqi == strong.median_cqi);
  CHECK(weak.actual_sinr_db > strong.actual_sinr_db);
}

TEST_CASE("throughput never exceeds the ceiling") {
  ScenarioConfig s = static_flat_scenario();
  s.subframes_per_point = 300;
  const double ceiling = ceiling_bps(s);
  CHECK(ceiling == doctest::Approx(5.5547 * 8000 * 0.85 * 1000.0));
  for (double power : {0.0, 100.0, 5000.0}) {
    const PointMetrics row = run_point_with_power(
        s, power == 0.0 ? Strategy::None : Strategy::Barrage, power, 0.0);
    CHECK(row.throughput_bps <= ceiling + 1e-6);
  }
}

TEST_CASE("interference-free static loop runs at the ceiling") {
  ScenarioConfig s = static_flat_scenario();
  s.subframes_per_point = 300;
  const PointMetrics row =
      run_point_with_power(s, Strategy::None, 0.0, 30.0);
  CHECK(row.bler <= 0.10);
  CHECK(row.throughput_bps >= 0.99 * ceiling_bps(s));
  CHECK(row.median_cqi == 15);
}

TEST_CASE("per-point retransmission latency matches the capped closed form") {
  // pin the transmitter at CQI 15 by making the first report unusable for
  // the whole run; with a static channel the per-block success probability
  // is then constant and the sample mean must match the finite-sum formula
  ScenarioConfig s = static_flat_scenario();
  s.csi.delay_subframes = 100000000;
  s.subframes_per_point = 20000;
  for (double target : {22.0, 20.5, 23.5}) {
    const double power =
        calibrate_interference_power(s, Strategy::Barrage, target);
    const PointMetrics row =
        run_point_with_power(s, Strategy::Barrage, power, target);
    CHECK(row.bler > 0.0);
    CHECK(row.bler < 1.0);
    const double expected =
        capped_mean_latency_ms(row.bler, s.harq.tau_wait_ms,
                               s.harq.max_retx);
    if (row.bler <= 0.5)
      CHECK(std::abs(row.mean_retx_latency_ms - expected) / expected < 0.10);
  }
}

TEST_CASE("capped runs report drops; unbounded runs never drop") {
  ScenarioConfig s = static_flat_scenario();
  s.csi.delay_subframes = 100000000;  // stuck at optimistic CQI 15
  s.subframes_per_point = 4000;
  const double power =
      calibrate_interference_power(s, Strategy::Barrage, 18.0);

  const PointMetrics capped =
      run_point_with_power(s, Strategy::Barrage, power, 18.0);
  CHECK(capped.bler > 0.9);
  CHECK(capped.residual_drop_rate > 0.5);
  CHECK(capped.mean_retx_latency_ms <=
        s.harq.max_retx * s.harq.tau_wait_ms + 1e-9);

  s.harq.mode = HarqMode::Unbounded;
  const PointMetrics unbounded =
      run_point_with_power(s, Strategy::Barrage, power, 18.0);
  CHECK(unbounded.residual_drop_rate == 0.0);
  CHECK(unbounded.mean_retx_latency_ms > capped.mean_retx_latency_ms);
}

TEST_CASE("scenario validation") {
  ScenarioConfig s;
  s.strategies = {Strategy::FreqDomainNpi};
  s.sweep_sinr_db.clear();
  CHECK_THROWS_AS(run_sweep(s), ConfigError);  // jamming needs sweep points
  s.subframes_per_point = 0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("a none-only sweep needs no SINR points and runs at the ceiling") {
  ScenarioConfig s = static_flat_scenario();
  s.strategies = {Strategy::None};
  s.sweep_sinr_db.clear();
  s.subframes_per_point = 200;
  const std::vector<PointMetrics> rows = run_sweep(s);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].strategy == Strategy::None);
  CHECK(rows[0].actual_sinr_db == doctest::Approx(30.0).epsilon(1e-6));
  CHECK(rows[0].throughput_bps >= 0.99 * ceiling_bps(s));
}
