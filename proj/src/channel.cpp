#include "npisim/channel.hpp"

#include <cmath>
#include <numeric>

#include "npisim/errors.hpp"
#include "npisim/units.hpp"

namespace npisim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void ChannelConfig::validate() const {
  if (!std::isfinite(snr_db)) throw ConfigError("snr_db must be finite");
  if (doppler_hz < 0.0) throw ConfigError("doppler_hz must be >= 0");
  if (subframe_duration_s <= 0.0)
    throw ConfigError("subframe_duration_s must be positive");
  if (subcarrier_spacing_hz <= 0.0)
    throw ConfigError("subcarrier_spacing_hz must be positive");
  if (profile == ChannelProfile::TappedDelayLine) {
    if (tap_delays_ns.empty())
      throw ConfigError("tap_delays_ns must not be empty");
    if (tap_delays_ns.size() != tap_powers_db.size())
      throw ConfigError("tap_delays_ns and tap_powers_db lengths differ");
  }
}

ChannelModel::ChannelModel(ChannelConfig config, int num_subcarriers)
    : config_(std::move(config)),
      num_subcarriers_(num_subcarriers),
      rng_(config_.seed) {
  config_.validate();
  if (num_subcarriers_ <= 0)
    throw ConfigError("num_subcarriers must be positive");

  rho_ = std::cyl_bessel_j(
      0.0, kTwoPi * config_.doppler_hz * config_.subframe_duration_s);

  if (config_.profile == ChannelProfile::FlatBlock) {
    tap_power_ = {1.0};
    // deterministic unit start: E[|h|^2] stays exactly 1 for every
    // subframe, and doppler 0 degenerates to a static unit-gain channel
    tap_gain_ = {{1.0, 0.0}};
    twiddle_.assign(1, std::vector<std::complex<double>>(
                           static_cast<size_t>(num_subcarriers_), {1.0, 0.0}));
    return;
  }

  const size_t n_taps = config_.tap_powers_db.size();
  tap_power_.resize(n_taps);
  for (size_t l = 0; l < n_taps; ++l)
    tap_power_[l] = db_to_lin(config_.tap_powers_db[l]);
  const double total =
      std::accumulate(tap_power_.begin(), tap_power_.end(), 0.0);
  for (double& p : tap_power_) p /= total;  // unit mean gain

  tap_gain_.resize(n_taps);
  for (size_t l = 0; l < n_taps; ++l)
    tap_gain_[l] = complex_gaussian(tap_power_[l]);  // stationary start

  twiddle_.assign(n_taps, std::vector<std::complex<double>>(
                              static_cast<size_t>(num_subcarriers_)));
  for (size_t l = 0; l < n_taps; ++l) {
    const double delay_s = config_.tap_delays_ns[l] * 1e-9;
    for (int k = 0; k < num_subcarriers_; ++k) {
      const double phase =
          -kTwoPi * config_.subcarrier_spacing_hz * k * delay_s;
      twiddle_[l][static_cast<size_t>(k)] = {std::cos(phase),
                                             std::sin(phase)};
    }
  }
}

std::complex<double> ChannelModel::complex_gaussian(double variance) {
  const double sigma = std::sqrt(variance / 2.0);
  const double re = rng_.gaussian() * sigma;
  const double im = rng_.gaussian() * sigma;
  return {re, im};
}

ChannelRealization ChannelModel::next() {
  if (subframe_ > 0) {
    // AR(1) per-tap evolution; rho = 1 (zero Doppler) freezes the state
    const double innov = std::sqrt(std::max(0.0, 1.0 - rho_ * rho_));
    for (size_t l = 0; l < tap_gain_.size(); ++l)
      tap_gain_[l] = rho_ * tap_gain_[l] +
                     innov * complex_gaussian(tap_power_[l]);
  }

  ChannelRealization out;
  out.subframe_index = subframe_++;
  out.subcarrier_gain.resize(static_cast<size_t>(num_subcarriers_));
  if (tap_gain_.size() == 1 && config_.profile == ChannelProfile::FlatBlock) {
    const double g = std::norm(tap_gain_[0]);
    std::fill(out.subcarrier_gain.begin(), out.subcarrier_gain.end(), g);
    return out;
  }
  for (int k = 0; k < num_subcarriers_; ++k) {
    std::complex<double> h{0.0, 0.0};
    for (size_t l = 0; l < tap_gain_.size(); ++l)
      h += tap_gain_[l] * twiddle_[l][static_cast<size_t>(k)];
    out.subcarrier_gain[static_cast<size_t>(k)] = std::norm(h);
  }
  return out;
}

std::vector<double> per_re_sinr(const ResourceGrid& grid,
                                const ChannelRealization& realization) {
  const int n_sc = grid.config().num_subcarriers();
  if (static_cast<int>(realization.subcarrier_gain.size()) != n_sc)
    throw ConfigError("channel realization does not match grid dimensions");
  std::vector<double> out(static_cast<size_t>(grid.config().total_res()));
  for (size_t re = 0; re < out.size(); ++re) {
    const double gain = realization.subcarrier_gain[re % static_cast<size_t>(n_sc)];
    out[re] = grid.signal_power[re] * gain /
              (grid.interference_power[re] + grid.noise_power);
  }
  return out;
}

}  // namespace npisim
