#pragma once

#include <cstdint>
#include <string>

#include "npisim/rng.hpp"

namespace npisim {

enum class HarqMode : std::uint8_t { Unbounded, Capped };

const char* to_string(HarqMode mode);
HarqMode harq_mode_from_string(const std::string& name);

struct HarqConfig {
  double tau_wait_ms = 8.0;  // wait between consecutive (re)transmissions
  int max_retx = 4;          // Capped mode only
  HarqMode mode = HarqMode::Capped;

  void validate() const;
  bool operator==(const HarqConfig&) const = default;
};

// Outcome of one transport block: retransmission count, the latency those
// retransmissions induced (zero when the first attempt succeeds), and
// whether the block was ever delivered (always, in Unbounded mode).
struct HarqRecord {
  int n_retx = 0;
  double latency_ms = 0.0;
  bool delivered = true;
  double success_prob_used = 1.0;

  bool first_attempt_ok() const { return n_retx == 0 && delivered; }
};

// Mean retransmission-induced latency of the unbounded geometric model:
// tau_wait * bler / (1 - bler). Diverges as bler -> 1; bler >= 1 throws.
double analytic_latency_ms(double bler, double tau_wait_ms);

// Mean retransmission count bler / (1 - bler); bler >= 1 throws.
double analytic_mean_retx(double bler);

// Finite-sum companions under a retransmission cap: the block is dropped
// after max_retx failed retransmissions, contributing max_retx waits.
// E[n_retx] = sum_{k=1..c} k * bler^k * (1-bler) + c * bler^(c+1).
// Always <= the unbounded mean; finite even at bler = 1.
double capped_mean_retx(double bler, int max_retx);
double capped_mean_latency_ms(double bler, double tau_wait_ms, int max_retx);

// Simulates one block as i.i.d. Bernoulli attempts with the given success
// probability. Unbounded mode draws the geometric retransmission count by
// inversion (identical law, constant time); p_success = 0 is rejected there
// since the block would never terminate. Capped mode runs the at most
// 1 + max_retx attempts explicitly.
HarqRecord run_block(double p_success, const HarqConfig& config, Rng& rng);

}  // namespace npisim
