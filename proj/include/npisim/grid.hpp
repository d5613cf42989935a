#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace npisim {

enum class ReKind : std::uint8_t { Pilot, Data, Control };

const char* to_string(ReKind kind);

// One-subframe OFDM grid geometry. Defaults model a 10 MHz downlink
// carrier (50 RB x 12 subcarriers x 14 symbols) with a single-port
// CRS-like pilot pattern: pilot symbols {0,4,7,11}, one pilot every 6th
// subcarrier, alternating frequency shifts {0,3}.
struct GridConfig {
  int num_rb = 50;
  int subcarriers_per_rb = 12;
  int symbols_per_subframe = 14;
  std::vector<int> pilot_symbol_indices = {0, 4, 7, 11};
  int pilot_subcarrier_period = 6;
  std::vector<int> pilot_subcarrier_shifts = {0, 3, 0, 3};
  int control_symbol_count = 0;

  int num_subcarriers() const { return num_rb * subcarriers_per_rb; }
  int total_res() const { return num_subcarriers() * symbols_per_subframe; }

  // Throws ConfigError on any invariant violation.
  void validate() const;

  bool operator==(const GridConfig&) const = default;
};

// Resource grid with per-RE linear powers. RE index = symbol *
// num_subcarriers + subcarrier. Kind partition: an RE is Pilot iff its
// symbol is a pilot symbol and its subcarrier matches that symbol's shift
// modulo the pilot period; remaining REs in the leading control symbols
// are Control; everything else is Data.
//
// Construction validates the config and labels every RE; instances are
// treated as immutable afterwards and may be shared across threads. The
// interference module produces modified copies rather than mutating.
class ResourceGrid {
 public:
  explicit ResourceGrid(GridConfig config);

  const GridConfig& config() const { return config_; }

  int re_index(int subcarrier, int symbol) const {
    return symbol * config_.num_subcarriers() + subcarrier;
  }
  int subcarrier_of(int re) const { return re % config_.num_subcarriers(); }
  int symbol_of(int re) const { return re / config_.num_subcarriers(); }

  ReKind kind(int subcarrier, int symbol) const;
  ReKind kind_at(int re) const { return kinds_[static_cast<size_t>(re)]; }

  std::span<const std::uint32_t> pilot_res() const { return pilot_res_; }
  std::span<const std::uint32_t> data_res() const { return data_res_; }
  std::span<const std::uint32_t> control_res() const { return control_res_; }

  // Per-RE transmit power (unit reference, scaled by the channel gain) and
  // additive interference power. Noise is white, one scalar for the grid.
  std::vector<double> signal_power;
  std::vector<double> interference_power;
  double noise_power = 1.0;

 private:
  GridConfig config_;
  std::vector<ReKind> kinds_;
  std::vector<std::uint32_t> pilot_res_;
  std::vector<std::uint32_t> data_res_;
  std::vector<std::uint32_t> control_res_;
};

// Sets grid noise so that a unit-gain RE sees the given SNR.
void apply_snr(ResourceGrid& grid, double snr_db);

}  // namespace npisim
