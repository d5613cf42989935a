#include "npisim/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "npisim/errors.hpp"
#include "npisim/harq.hpp"
#include "npisim/units.hpp"

namespace npisim {

namespace {

std::string fmt(double value, int precision = 6) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
  return buf;
}

std::string manifest_line(const ParsedScenario& parsed) {
  std::ostringstream out;
  out << "# " << kToolVersion << " | master_seed="
      << parsed.scenario.master_seed << " | config=" << config_summary(parsed)
      << "\n";
  return out.str();
}

}  // namespace

void atomic_write_file(const std::filesystem::path& path,
                       const std::string& content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush())
      throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string sweep_csv(const std::vector<PointMetrics>& rows,
                      const ParsedScenario& parsed) {
  const HarqConfig& harq = parsed.scenario.harq;
  std::ostringstream out;
  out << manifest_line(parsed);
  out << "strategy,actual_sinr_db,bler,throughput_mbps,median_cqi,"
         "median_est_sinr_db,mean_retx_latency_ms,analytic_latency_ms,"
         "capped_latency_ms,drop_rate\n";
  for (const PointMetrics& row : rows) {
    const double analytic =
        row.bler < 1.0
            ? analytic_latency_ms(row.bler, harq.tau_wait_ms)
            : std::numeric_limits<double>::infinity();
    const double capped =
        capped_mean_latency_ms(row.bler, harq.tau_wait_ms, harq.max_retx);
    out << to_string(row.strategy) << ',' << fmt(row.actual_sinr_db, 4) << ','
        << fmt(row.bler) << ',' << fmt(row.throughput_bps / 1e6, 4) << ','
        << row.median_cqi << ',' << fmt(row.median_est_sinr_db, 4) << ','
        << fmt(row.mean_retx_latency_ms, 4) << ',' << fmt(analytic, 4) << ','
        << fmt(capped, 4) << ',' << fmt(row.residual_drop_rate) << '\n';
  }
  return out.str();
}

std::string sweep_json(const std::vector<PointMetrics>& rows,
                       const ParsedScenario& parsed) {
  nlohmann::json j;
  j["tool"] = kToolVersion;
  j["config"] = nlohmann::json::parse(config_summary(parsed));
  nlohmann::json points = nlohmann::json::array();
  for (const PointMetrics& row : rows) {
    nlohmann::json p;
    p["strategy"] = to_string(row.strategy);
    p["target_sinr_db"] = row.target_sinr_db;
    p["actual_sinr_db"] = row.actual_sinr_db;
    p["bler"] = row.bler;
    p["throughput_bps"] = row.throughput_bps;
    p["median_cqi"] = row.median_cqi;
    p["median_est_sinr_db"] = row.median_est_sinr_db;
    p["median_raw_estimate_db"] = row.median_raw_estimate_db;
    p["mean_retx_latency_ms"] = row.mean_retx_latency_ms;
    p["mean_n_retx"] = row.mean_n_retx;
    p["drop_rate"] = row.residual_drop_rate;
    p["calibrated_total_power"] = row.calibrated_total_power;
    p["subframes"] = row.subframes;
    points.push_back(p);
  }
  j["points"] = points;
  return j.dump(2) + "\n";
}

std::string grid_csv(const ResourceGrid& grid, const ParsedScenario& parsed) {
  std::ostringstream out;
  out << manifest_line(parsed);
  out << "subcarrier,symbol,kind\n";
  const GridConfig& config = grid.config();
  for (int sym = 0; sym < config.symbols_per_subframe; ++sym)
    for (int sc = 0; sc < config.num_subcarriers(); ++sc)
      out << sc << ',' << sym << ',' << to_string(grid.kind(sc, sym)) << '\n';
  return out.str();
}

std::string latency_table_csv(const std::vector<double>& blers,
                              const HarqConfig& harq,
                              const ParsedScenario& parsed) {
  for (double bler : blers)
    if (!(bler >= 0.0) || bler >= 1.0)
      throw ConfigError("latency table bler " + fmt(bler) +
                        " outside [0, 1): the analytic mean diverges at 1");
  std::ostringstream out;
  out << manifest_line(parsed);
  out << "bler,analytic_ms,capped_ms,mean_retx\n";
  for (double bler : blers)
    out << fmt(bler, 4) << ','
        << fmt(analytic_latency_ms(bler, harq.tau_wait_ms), 6) << ','
        << fmt(capped_mean_latency_ms(bler, harq.tau_wait_ms, harq.max_retx),
               6)
        << ',' << fmt(analytic_mean_retx(bler), 6) << '\n';
  return out.str();
}

std::string calibrate_csv(const ScenarioConfig& scenario,
                          const ParsedScenario& parsed) {
  std::ostringstream out;
  out << manifest_line(parsed);
  out << "strategy,target_sinr_db,total_power,total_power_dbm,per_re_power,"
         "targeted_res,tones\n";
  for (Strategy strategy : scenario.effective_strategies()) {
    if (strategy == Strategy::None) continue;
    for (double target : scenario.sweep_sinr_db) {
      const double power =
          calibrate_interference_power(scenario, strategy, target);
      ResourceGrid grid(scenario.grid);
      apply_snr(grid, scenario.channel.snr_db);
      InterferenceProfile profile = scenario.interference;
      profile.strategy = strategy;
      const auto targets = targeted_res(grid, profile);
      out << to_string(strategy) << ',' << fmt(target, 4) << ','
          << fmt(power, 9) << ','
          << (power > 0 ? fmt(mw_to_dbm(power), 4) : "-inf") << ','
          << fmt(power / static_cast<double>(targets.size()), 9) << ','
          << targets.size() << ',' << tone_count(scenario.grid, profile)
          << '\n';
    }
  }
  return out.str();
}

}  // namespace npisim
