#include "npisim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "npisim/errors.hpp"

namespace npisim {

void StreamingStats::update(double value) {
  ++count;
  const double delta = value - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (value - mean);
}

double StreamingStats::variance() const {
  return count > 0 ? m2 / static_cast<double>(count) : 0.0;
}

StreamingStats StreamingStats::merged(const StreamingStats& a,
                                      const StreamingStats& b) {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  StreamingStats out;
  out.count = a.count + b.count;
  const double delta = b.mean - a.mean;
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  out.mean = a.mean + delta * nb / (na + nb);
  out.m2 = a.m2 + b.m2 + delta * delta * na * nb / (na + nb);
  return out;
}

IntHistogram::IntHistogram(int lo, int hi) : lo_(lo) {
  if (hi < lo) throw ConfigError("IntHistogram range is empty");
  bins_.assign(static_cast<size_t>(hi - lo + 1), 0);
}

void IntHistogram::update(int value) {
  const int idx = std::clamp(value - lo_, 0,
                             static_cast<int>(bins_.size()) - 1);
  ++bins_[static_cast<size_t>(idx)];
  ++count_;
}

void IntHistogram::merge(const IntHistogram& other) {
  if (other.bins_.size() != bins_.size() || other.lo_ != lo_)
    throw ConfigError("IntHistogram merge with mismatched range");
  for (size_t i = 0; i < bins_.size(); ++i) bins_[i] += other.bins_[i];
  count_ += other.count_;
}

int IntHistogram::median() const {
  if (count_ == 0) throw std::domain_error("median of an empty histogram");
  const long long target = (count_ + 1) / 2;  // lower median
  long long cum = 0;
  for (size_t i = 0; i < bins_.size(); ++i) {
    cum += bins_[i];
    if (cum >= target) return lo_ + static_cast<int>(i);
  }
  return lo_ + static_cast<int>(bins_.size()) - 1;
}

QuantileSketch::QuantileSketch(std::size_t exact_capacity, double lo,
                               double hi, int num_bins)
    : capacity_(exact_capacity), lo_(lo), hi_(hi), num_bins_(num_bins) {
  if (!(hi > lo) || num_bins < 1)
    throw ConfigError("QuantileSketch range/bins invalid");
}

int QuantileSketch::bin_of(double value) const {
  const double t = (value - lo_) / (hi_ - lo_);
  const int idx = static_cast<int>(std::floor(t * num_bins_));
  return std::clamp(idx, 0, num_bins_ - 1);
}

void QuantileSketch::degrade() {
  bins_.assign(static_cast<size_t>(num_bins_), 0);
  for (double v : values_) ++bins_[static_cast<size_t>(bin_of(v))];
  values_.clear();
  values_.shrink_to_fit();
  exact_mode_ = false;
}

void QuantileSketch::update(double value) {
  ++count_;
  if (exact_mode_) {
    values_.push_back(value);
    if (values_.size() > capacity_) degrade();
    return;
  }
  ++bins_[static_cast<size_t>(bin_of(value))];
}

void QuantileSketch::merge(const QuantileSketch& other) {
  if (other.lo_ != lo_ || other.hi_ != hi_ || other.num_bins_ != num_bins_)
    throw ConfigError("QuantileSketch merge with mismatched layout");
  count_ += other.count_;
  if (exact_mode_ && other.exact_mode_ &&
      values_.size() + other.values_.size() <= capacity_) {
    values_.insert(values_.end(), other.values_.begin(), other.values_.end());
    return;
  }
  if (exact_mode_) degrade();
  if (other.exact_mode_) {
    for (double v : other.values_) ++bins_[static_cast<size_t>(bin_of(v))];
  } else {
    for (size_t i = 0; i < bins_.size(); ++i) bins_[i] += other.bins_[i];
  }
}

double QuantileSketch::median() const {
  if (count_ == 0) throw std::domain_error("median of an empty sketch");
  const long long target = (count_ + 1) / 2;  // lower median
  if (exact_mode_) {
    std::sort(values_.begin(), values_.end());
    return values_[static_cast<size_t>(target - 1)];
  }
  long long cum = 0;
  for (size_t i = 0; i < bins_.size(); ++i) {
    cum += bins_[i];
    if (cum >= target) {
      // bin midpoint
      const double width = (hi_ - lo_) / num_bins_;
      return lo_ + (static_cast<double>(i) + 0.5) * width;
    }
  }
  return hi_;
}

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("normal_quantile needs p in (0, 1)");
  // Acklam's algorithm
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double q, r;
  if (p < p_low) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
            a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r +
            1.0);
  }
  q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
           c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

ConfidenceInterval wilson_interval(long long events, long long trials,
                                   double confidence) {
  if (trials < 1) throw std::domain_error("wilson_interval needs trials >= 1");
  if (events < 0 || events > trials)
    throw std::domain_error("events outside [0, trials]");
  const double z = normal_quantile(0.5 + confidence / 2.0);
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(events) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace npisim
