#include "npisim/linkadapt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "npisim/errors.hpp"

namespace npisim {

namespace {

// Standard 4-bit CQI spectral efficiencies, bits per RE, rows 1..15.
// Row 0 ("out of range") gets a sub-lowest placeholder so the table keeps
// 16 strictly increasing rows; selection never uses it.
constexpr double kEfficiency[16] = {
    0.0762, 0.1523, 0.2344, 0.3770, 0.6016, 0.8770, 1.1758, 1.4766,
    1.9141, 2.4063, 2.7305, 3.3223, 3.9023, 4.5234, 5.1152, 5.5547};

constexpr double kAnchorBler = 0.10;

double threshold_for(const SinrQuantizer& quantizer, int index,
                     double slope) {
  // solve BLER(anchor) = 0.10: anchor - threshold = ln(1/0.1 - 1) / slope
  return quantizer.cqi_to_sinr_db(index) -
         std::log(1.0 / kAnchorBler - 1.0) / slope;
}

}  // namespace

double anchor_bler() { return kAnchorBler; }

McsTable McsTable::standard(const SinrQuantizer& quantizer,
                            double bler_slope) {
  McsTable table;
  table.entries_.reserve(16);
  for (int i = 0; i < 16; ++i)
    table.entries_.push_back({i, kEfficiency[i],
                              threshold_for(quantizer, i, bler_slope),
                              bler_slope});
  table.validate();
  return table;
}

McsTable McsTable::from_csv(const std::filesystem::path& path,
                            const SinrQuantizer& quantizer) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open MCS table: " + path.string());
  McsTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    double fields[3];
    int n = 0;
    while (std::getline(row, cell, ',') && n < 3) {
      try {
        fields[n] = std::stod(cell);
      } catch (const std::exception&) {
        n = -1;  // header or junk line
        break;
      }
      ++n;
    }
    if (n < 0 && table.entries_.empty()) continue;  // skip one header line
    if (n != 3)
      throw ConfigError("MCS table row '" + line +
                        "': expected index,efficiency,slope");
    const int index = static_cast<int>(fields[0]);
    if (!(fields[2] > 0.0))
      throw ConfigError("MCS table row " + std::to_string(index) +
                        ": slope must be positive");
    table.entries_.push_back({index, fields[1],
                              threshold_for(quantizer, index, fields[2]),
                              fields[2]});
  }
  table.validate();
  return table;
}

void McsTable::validate() const {
  if (entries_.size() != 16)
    throw ConfigError("MCS table must have 16 rows, got " +
                      std::to_string(entries_.size()));
  for (int i = 0; i < 16; ++i) {
    if (entries_[static_cast<size_t>(i)].index != i)
      throw ConfigError("MCS table row " + std::to_string(i) +
                        " has index " +
                        std::to_string(entries_[static_cast<size_t>(i)].index));
    if (!(entries_[static_cast<size_t>(i)].spectral_efficiency > 0.0))
      throw ConfigError("MCS spectral efficiency must be positive");
    if (i > 0) {
      if (entries_[static_cast<size_t>(i)].spectral_efficiency <=
          entries_[static_cast<size_t>(i - 1)].spectral_efficiency)
        throw ConfigError("MCS spectral efficiency must be strictly "
                          "increasing");
      if (entries_[static_cast<size_t>(i)].bler_threshold_db <=
          entries_[static_cast<size_t>(i - 1)].bler_threshold_db)
        throw ConfigError("MCS BLER thresholds must be strictly increasing");
    }
  }
}

const McsEntry& McsTable::entry(int index) const {
  if (index < 0 || index >= size())
    throw ConfigError("MCS index " + std::to_string(index) +
                      " outside [0, 15]");
  return entries_[static_cast<size_t>(index)];
}

const McsEntry& McsTable::select(int cqi) const {
  return entry(std::max(cqi, 1));
}

double McsTable::max_efficiency() const {
  return entries_.back().spectral_efficiency;
}

double block_error_prob(const McsEntry& mcs, double actual_sinr_db) {
  const double x = mcs.bler_slope * (actual_sinr_db - mcs.bler_threshold_db);
  // logistic, evaluated on the stable side
  if (x >= 0.0) return std::exp(-x) / (1.0 + std::exp(-x));
  return 1.0 / (1.0 + std::exp(x));
}

double delivered_bits(const McsEntry& mcs, int data_re_count, bool success) {
  if (!success) return 0.0;
  return mcs.spectral_efficiency * static_cast<double>(data_re_count);
}

}  // namespace npisim
