// npisim command-line front end: sweep | latency-table | grid-dump |
// calibrate. Exit codes: 0 success, 1 runtime failure, 2 bad
// configuration/usage.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "npisim/config.hpp"
#include "npisim/errors.hpp"
#include "npisim/output.hpp"
#include "npisim/sim.hpp"

namespace {

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<long> trials;
  std::vector<double> blers = {0.0, 0.01, 0.05, 0.1, 0.2,
                               0.3, 0.5, 0.7, 0.9};
};

npisim::ParsedScenario load_scenario(const Options& opt) {
  npisim::ParsedScenario parsed =
      npisim::parse_config(opt.config_path, opt.overrides);
  if (opt.seed) {
    parsed.scenario.master_seed = *opt.seed;
    parsed.scenario.channel.seed = *opt.seed;
  }
  if (opt.trials) {
    if (*opt.trials < 1) throw npisim::ConfigError("--trials must be >= 1");
    parsed.scenario.subframes_per_point = *opt.trials;
  }
  return parsed;
}

int run_sweep_cmd(const Options& opt) {
  const npisim::ParsedScenario parsed = load_scenario(opt);
  std::vector<npisim::PointMetrics> rows;
  if (parsed.explicit_power &&
      parsed.scenario.sweep_sinr_db.empty()) {
    // single point at the configured power, no calibration
    for (npisim::Strategy strategy :
         parsed.scenario.effective_strategies())
      rows.push_back(npisim::run_point_with_power(
          parsed.scenario, strategy,
          strategy == npisim::Strategy::None ? 0.0 : *parsed.explicit_power,
          parsed.scenario.channel.snr_db));
  } else {
    rows = npisim::run_sweep(parsed.scenario);
  }
  const std::filesystem::path dir(opt.out_dir);
  npisim::atomic_write_file(dir / "sweep.csv",
                            npisim::sweep_csv(rows, parsed));
  npisim::atomic_write_file(dir / "sweep.json",
                            npisim::sweep_json(rows, parsed));
  std::cout << "wrote " << (dir / "sweep.csv").string() << " ("
            << rows.size() << " points)\n";
  return 0;
}

int run_latency_table_cmd(const Options& opt) {
  const npisim::ParsedScenario parsed = load_scenario(opt);
  const std::string csv =
      npisim::latency_table_csv(opt.blers, parsed.scenario.harq, parsed);
  const std::filesystem::path target =
      std::filesystem::path(opt.out_dir) / "latency.csv";
  npisim::atomic_write_file(target, csv);
  std::cout << csv;
  return 0;
}

int run_grid_dump_cmd(const Options& opt) {
  const npisim::ParsedScenario parsed = load_scenario(opt);
  const npisim::ResourceGrid grid(parsed.scenario.grid);
  const std::filesystem::path target =
      std::filesystem::path(opt.out_dir) / "grid.csv";
  npisim::atomic_write_file(target, npisim::grid_csv(grid, parsed));
  std::cout << "wrote " << target.string() << " ("
            << grid.config().total_res() << " REs, "
            << grid.pilot_res().size() << " pilots)\n";
  return 0;
}

int run_calibrate_cmd(const Options& opt) {
  const npisim::ParsedScenario parsed = load_scenario(opt);
  const std::string csv = npisim::calibrate_csv(parsed.scenario, parsed);
  const std::filesystem::path target =
      std::filesystem::path(opt.out_dir) / "calibration.csv";
  npisim::atomic_write_file(target, csv);
  std::cout << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link-level simulator for pilot-aware interference and its "
               "impact on link adaptation and retransmission latency"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global options after the subcommand name

  Options opt;
  app.add_option("--config", opt.config_path, "JSON scenario file");
  app.add_option("--out", opt.out_dir, "output directory");
  app.add_option("--set", opt.overrides,
                 "override a config key, key=value (repeatable)");
  app.add_option("--seed", opt.seed, "override master_seed");
  app.add_option("--trials", opt.trials, "override subframes_per_point");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "run the closed loop over strategies x SINR points");
  CLI::App* latency = app.add_subcommand(
      "latency-table", "print analytic vs capped retransmission latency");
  latency->add_option("--blers", opt.blers, "BLER values for the table");
  CLI::App* grid = app.add_subcommand("grid-dump",
                                      "dump the RE layout (pilot/data/control)");
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "report interferer power per strategy and SINR target");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sweep->parsed()) return run_sweep_cmd(opt);
    if (latency->parsed()) return run_latency_table_cmd(opt);
    if (grid->parsed()) return run_grid_dump_cmd(opt);
    if (calibrate->parsed()) return run_calibrate_cmd(opt);
    std::cerr << "error: no command given\n";
    return 2;
  } catch (const npisim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
