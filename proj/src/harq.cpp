#include "npisim/harq.hpp"

#include <cmath>
#include <stdexcept>

#include "npisim/errors.hpp"

namespace npisim {

const char* to_string(HarqMode mode) {
  return mode == HarqMode::Unbounded ? "unbounded" : "capped";
}

HarqMode harq_mode_from_string(const std::string& name) {
  if (name == "unbounded") return HarqMode::Unbounded;
  if (name == "capped") return HarqMode::Capped;
  throw ConfigError("unknown harq_mode '" + name +
                    "' (expected capped|unbounded)");
}

void HarqConfig::validate() const {
  if (!(tau_wait_ms > 0.0)) throw ConfigError("tau_wait_ms must be positive");
  if (mode == HarqMode::Capped && max_retx < 0)
    throw ConfigError("max_retx must be >= 0");
}

namespace {
void check_bler_below_one(double bler) {
  if (!(bler >= 0.0) || !std::isfinite(bler))
    throw std::domain_error("bler must be finite and >= 0");
  if (bler >= 1.0)
    throw std::domain_error(
        "bler >= 1: mean retransmission latency diverges");
}
}  // namespace

double analytic_mean_retx(double bler) {
  check_bler_below_one(bler);
  return bler / (1.0 - bler);
}

double analytic_latency_ms(double bler, double tau_wait_ms) {
  return analytic_mean_retx(bler) * tau_wait_ms;
}

double capped_mean_retx(double bler, int max_retx) {
  if (!(bler >= 0.0) || bler > 1.0 || !std::isfinite(bler))
    throw std::domain_error("bler must be in [0, 1]");
  if (max_retx < 0) throw std::domain_error("max_retx must be >= 0");
  double mean = 0.0;
  double bler_pow = 1.0;
  for (int k = 1; k <= max_retx; ++k) {
    bler_pow *= bler;  // bler^k
    mean += k * bler_pow * (1.0 - bler);
  }
  mean += max_retx * bler_pow * bler;  // dropped after max_retx failures
  return mean;
}

double capped_mean_latency_ms(double bler, double tau_wait_ms, int max_retx) {
  return capped_mean_retx(bler, max_retx) * tau_wait_ms;
}

HarqRecord run_block(double p_success, const HarqConfig& config, Rng& rng) {
  if (!(p_success >= 0.0) || p_success > 1.0)
    throw std::domain_error("p_success must be in [0, 1]");
  HarqRecord record;
  record.success_prob_used = p_success;

  if (config.mode == HarqMode::Unbounded) {
    if (p_success == 0.0)
      throw std::domain_error(
          "p_success = 0 with unbounded HARQ never terminates");
    if (p_success < 1.0) {
      // geometric failure count by inversion; clamp the (astronomically
      // unlikely) tail past INT_MAX instead of overflowing the cast
      const double u = rng.uniform_open01();
      const double n = std::floor(std::log(u) / std::log(1.0 - p_success));
      record.n_retx = n < 2147483647.0 ? static_cast<int>(n) : 2147483647;
    }
    record.delivered = true;
  } else {
    record.delivered = false;
    for (int attempt = 0; attempt <= config.max_retx; ++attempt) {
      if (rng.bernoulli(p_success)) {
        record.delivered = true;
        record.n_retx = attempt;
        break;
      }
    }
    if (!record.delivered) record.n_retx = config.max_retx;
  }

  record.latency_ms = record.n_retx * config.tau_wait_ms;
  return record;
}

}  // namespace npisim
