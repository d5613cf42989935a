#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "npisim/errors.hpp"
#include "npisim/grid.hpp"

using namespace npisim;

namespace {

// Independent labeling oracle: applies the pilot/control/data rules
// directly, without going through ResourceGrid.
ReKind oracle_kind(const GridConfig& c, int sc, int sym) {
  for (size_t i = 0; i < c.pilot_symbol_indices.size(); ++i) {
    if (c.pilot_symbol_indices[i] == sym &&
        sc % c.pilot_subcarrier_period == c.pilot_subcarrier_shifts[i])
      return ReKind::Pilot;
  }
  if (sym < c.control_symbol_count) return ReKind::Control;
  return ReKind::Data;
}

int oracle_count(const GridConfig& c, ReKind kind) {
  int n = 0;
  for (int sym = 0; sym < c.symbols_per_subframe; ++sym)
    for (int sc = 0; sc < c.num_subcarriers(); ++sc)
      if (oracle_kind(c, sc, sym) == kind) ++n;
  return n;
}

}  // namespace

TEST_CASE("default 10 MHz profile has 8400 REs") {
  GridConfig c;
  CHECK(c.total_res() == 8400);
  ResourceGrid grid(c);
  CHECK(grid.signal_power.size() == 8400);
  CHECK(grid.interference_power.size() == 8400);
}

TEST_CASE("default profile has 400 pilot REs (enumeration oracle)") {
  GridConfig c;
  // 600 subcarriers / period 6 = 100 pilots per pilot symbol, 4 symbols
  CHECK(oracle_count(c, ReKind::Pilot) == 400);
  ResourceGrid grid(c);
  CHECK(grid.pilot_res().size() == 400);
}

TEST_CASE("kinds partition the grid") {
  GridConfig c;
  ResourceGrid grid(c);
  CHECK(grid.pilot_res().size() + grid.data_res().size() +
            grid.control_res().size() ==
        static_cast<size_t>(c.total_res()));
  CHECK(grid.data_res().size() == 8000);  // 8400 - 400, control region empty

  std::set<std::uint32_t> seen;
  for (auto re : grid.pilot_res()) seen.insert(re);
  for (auto re : grid.data_res()) seen.insert(re);
  for (auto re : grid.control_res()) seen.insert(re);
  CHECK(seen.size() == static_cast<size_t>(c.total_res()));
}

TEST_CASE("per-RE kind matches the oracle, including a control region") {
  GridConfig c;
  c.control_symbol_count = 3;
  ResourceGrid grid(c);
  for (int sym = 0; sym < c.symbols_per_subframe; ++sym)
    for (int sc = 0; sc < c.num_subcarriers(); ++sc)
      CHECK(grid.kind(sc, sym) == oracle_kind(c, sc, sym));
  CHECK(static_cast<int>(grid.control_res().size()) ==
        oracle_count(c, ReKind::Control));
  CHECK(static_cast<int>(grid.data_res().size()) ==
        oracle_count(c, ReKind::Data));
}

TEST_CASE("pilot predicate at (subcarrier 6, symbol 0) with shift 0") {
  ResourceGrid grid((GridConfig()));
  CHECK(grid.kind(6, 0) == ReKind::Pilot);   // 6 mod 6 == 0
  CHECK(grid.kind(3, 0) == ReKind::Data);    // symbol 0 uses shift 0
  CHECK(grid.kind(3, 4) == ReKind::Pilot);   // symbol 4 uses shift 3
  CHECK(grid.kind(6, 1) == ReKind::Data);    // symbol 1 carries no pilots
}

TEST_CASE("adjacent pilot subcarrier spacing within one symbol is the period") {
  GridConfig c;
  ResourceGrid grid(c);
  int prev = -1;
  for (int sc = 0; sc < c.num_subcarriers(); ++sc) {
    if (grid.kind(sc, 0) != ReKind::Pilot) continue;
    if (prev >= 0) CHECK(sc - prev == c.pilot_subcarrier_period);
    prev = sc;
  }
}

TEST_CASE("pilot sparsity stays below 1/period") {
  GridConfig c;
  ResourceGrid grid(c);
  const double fraction = static_cast<double>(grid.pilot_res().size()) /
                          static_cast<double>(c.total_res());
  CHECK(fraction < 1.0 / c.pilot_subcarrier_period);
  CHECK(grid.pilot_res().size() == 400);
  CHECK(c.total_res() == 8400);
}

TEST_CASE("equal configs build identical grids") {
  GridConfig c;
  c.control_symbol_count = 2;
  ResourceGrid a(c);
  ResourceGrid b(c);
  for (int re = 0; re < c.total_res(); ++re)
    CHECK(a.kind_at(re) == b.kind_at(re));
  CHECK(a.signal_power == b.signal_power);
  CHECK(a.interference_power == b.interference_power);
}

TEST_CASE("invalid configs are rejected") {
  GridConfig c;
  c.num_rb = 0;
  CHECK_THROWS_AS(ResourceGrid{c}, ConfigError);

  c = GridConfig();
  c.pilot_subcarrier_shifts = {0, 3, 0, 6};  // shift >= period
  CHECK_THROWS_AS(ResourceGrid{c}, ConfigError);

  c = GridConfig();
  c.pilot_symbol_indices = {0, 4, 7, 14};  // symbol out of range
  CHECK_THROWS_AS(ResourceGrid{c}, ConfigError);

  c = GridConfig();
  c.pilot_subcarrier_shifts = {0, 3};  // length mismatch
  CHECK_THROWS_AS(ResourceGrid{c}, ConfigError);
}

TEST_CASE("partition holds for assorted configs") {
  for (int period : {2, 3, 6, 12}) {
    for (int control : {0, 1, 3}) {
      GridConfig c;
      c.num_rb = 6;
      c.pilot_subcarrier_period = period;
      c.pilot_symbol_indices = {0, 7};
      c.pilot_subcarrier_shifts = {0, period / 2};
      c.control_symbol_count = control;
      ResourceGrid grid(c);
      CHECK(grid.pilot_res().size() + grid.data_res().size() +
                grid.control_res().size() ==
            static_cast<size_t>(c.total_res()));
      for (int sym = 0; sym < c.symbols_per_subframe; ++sym)
        for (int sc = 0; sc < c.num_subcarriers(); ++sc)
          CHECK(grid.kind(sc, sym) == oracle_kind(c, sc, sym));
    }
  }
}
