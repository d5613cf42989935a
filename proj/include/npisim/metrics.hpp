#pragma once

#include <cstdint>
#include <vector>

namespace npisim {

// Running mean/variance (Welford) with associative merge for parallel
// reduction.
struct StreamingStats {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void update(double value);
  double variance() const;  // population variance

  static StreamingStats merged(const StreamingStats& a,
                               const StreamingStats& b);
};

// Exact counts over a small integer domain (CQI 0..15). Median is the
// lower median, exact.
class IntHistogram {
 public:
  IntHistogram(int lo, int hi);

  void update(int value);
  void merge(const IntHistogram& other);

  long long count() const { return count_; }
  int median() const;

 private:
  int lo_;
  std::vector<long long> bins_;
  long long count_ = 0;
};

// Median sketch for continuous streams: exact while the stream fits in the
// buffer, then degrades to a fixed fine-grained histogram over [lo, hi].
// Bin width with the defaults is ~0.03, well under half a CQI step.
class QuantileSketch {
 public:
  explicit QuantileSketch(std::size_t exact_capacity = 4096,
                          double lo = -60.0, double hi = 60.0,
                          int num_bins = 4096);

  void update(double value);
  void merge(const QuantileSketch& other);

  long long count() const { return count_; }
  double median() const;
  bool exact() const { return exact_mode_; }

 private:
  std::size_t capacity_;
  double lo_, hi_;
  int num_bins_;
  bool exact_mode_ = true;
  mutable std::vector<double> values_;  // sorted lazily for median queries
  std::vector<long long> bins_;
  long long count_ = 0;

  void degrade();
  int bin_of(double value) const;
};

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 1.0;
};

// Wilson score interval for an event proportion.
ConfidenceInterval wilson_interval(long long events, long long trials,
                                   double confidence);

// Standard normal quantile (Acklam's rational approximation, |rel err|
// below 1.2e-9 over (0,1)).
double normal_quantile(double p);

}  // namespace npisim
