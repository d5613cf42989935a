#pragma once

#include <cmath>

// Power-unit conventions used throughout the simulator:
// core modules operate on linear power only; dB/dBm appear at the
// configuration and output boundaries. The linear reference is 1 mW,
// i.e. 0 dBm == 1.0, matching the unit per-RE signal power.
namespace npisim {

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

}  // namespace npisim
