#pragma once

#include <filesystem>
#include <vector>

#include "npisim/csi.hpp"

namespace npisim {

// One modulation-and-coding row. The BLER abstraction is a logistic
// waterfall in dB: BLER(g) = 1 / (1 + exp(slope * (g - threshold))).
// Thresholds are never configured directly; they are solved from the
// calibration constraint BLER(mapping SINR of the row) = 0.10, so perfect
// CSI meets the 10% link-adaptation target by construction.
struct McsEntry {
  int index = 0;
  double spectral_efficiency = 0.0;  // bits per data RE
  double bler_threshold_db = 0.0;
  double bler_slope = 2.0;           // per dB
};

class McsTable {
 public:
  // 16 rows aligned with CQI 0..15 using the standard 4-bit CQI efficiency
  // column (0.1523 .. 5.5547 bits/RE for rows 1..15).
  static McsTable standard(const SinrQuantizer& quantizer,
                           double bler_slope = 2.0);

  // CSV rows (index, efficiency, slope); thresholds are re-derived from the
  // quantizer anchors, never read from the file.
  static McsTable from_csv(const std::filesystem::path& path,
                           const SinrQuantizer& quantizer);

  const McsEntry& entry(int index) const;

  // CQI -> MCS. CQI 0 (outage) falls back to the lowest usable row.
  const McsEntry& select(int cqi) const;

  int size() const { return static_cast<int>(entries_.size()); }
  double max_efficiency() const;

  void validate() const;

 private:
  std::vector<McsEntry> entries_;
};

double block_error_prob(const McsEntry& mcs, double actual_sinr_db);

// Bits carried by one transport block occupying the grid's data REs.
double delivered_bits(const McsEntry& mcs, int data_re_count, bool success);

double anchor_bler();  // the 10% calibration target

}  // namespace npisim
