#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "npisim/grid.hpp"
#include "npisim/rng.hpp"

namespace npisim {

enum class ChannelProfile : std::uint8_t { FlatBlock, TappedDelayLine };

// Block-fading channel settings. The tapped-delay-line defaults are the
// 3GPP EPA profile (7 taps); tap powers are normalized to unit total so
// the frequency response has unit mean power gain.
struct ChannelConfig {
  double snr_db = 30.0;
  double doppler_hz = 20.0;
  ChannelProfile profile = ChannelProfile::TappedDelayLine;
  std::vector<double> tap_delays_ns = {0, 30, 70, 90, 110, 190, 410};
  std::vector<double> tap_powers_db = {0, -1, -2, -3, -8, -17.2, -20.8};
  double subframe_duration_s = 1e-3;
  double subcarrier_spacing_hz = 15e3;
  std::uint64_t seed = 1;

  void validate() const;
  bool operator==(const ChannelConfig&) const = default;
};

// Per-subframe channel draw: one linear power gain per subcarrier,
// constant across the symbols of the subframe (quasi-static block).
struct ChannelRealization {
  long subframe_index = 0;
  std::vector<double> subcarrier_gain;

  double gain_at(int subcarrier) const {
    return subcarrier_gain[static_cast<size_t>(subcarrier)];
  }
};

// Doubly selective fading generator. Each tap carries a complex gain that
// evolves as a first-order autoregressive process across subframes with
// coefficient J0(2*pi*doppler*T), the Jakes autocorrelation at lag T; the
// frequency response follows from the tap delays.
//
// FlatBlock uses a single tap starting at amplitude 1, which keeps the
// mean gain at exactly 1 for every subframe and degenerates to a static
// unit-gain (cabled) channel when doppler_hz == 0. TappedDelayLine taps
// start from their stationary Rayleigh distribution.
class ChannelModel {
 public:
  ChannelModel(ChannelConfig config, int num_subcarriers);

  // Advances one subframe and returns its realization.
  ChannelRealization next();

  const ChannelConfig& config() const { return config_; }

  // AR(1) coefficient of each tap's complex amplitude per subframe.
  double time_correlation() const { return rho_; }

 private:
  ChannelConfig config_;
  int num_subcarriers_;
  double rho_;
  std::vector<double> tap_power_;                 // normalized linear
  std::vector<std::complex<double>> tap_gain_;    // current state
  std::vector<std::vector<std::complex<double>>> twiddle_;  // [tap][subcarrier]
  Rng rng_;
  long subframe_ = 0;

  std::complex<double> complex_gaussian(double variance);
};

// SINR(re) = signal * gain / (interference + noise), linear, for every RE.
std::vector<double> per_re_sinr(const ResourceGrid& grid,
                                const ChannelRealization& realization);

}  // namespace npisim
