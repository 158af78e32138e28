#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace gpat {

// returns[replicate][episode]; rectangular.
struct ReplicateMatrix {
  std::vector<std::vector<double>> returns;
  size_t replicates() const { return returns.size(); }
  size_t episodes() const { return returns.empty() ? 0 : returns[0].size(); }
  std::vector<double> pooled() const;
  void validate() const;
};

// Interquartile mean: mean of the middle 50%, fractional trimming with
// linear-interpolation (type-7) boundaries. Requires at least 4 values.
double iqm(std::vector<double> values);

// Type-7 (linear interpolation) quantile of already-sorted data.
double quantile_sorted(const std::vector<double>& sorted, double q);

struct ConfidenceInterval {
  double low = 0.0;
  double high = 0.0;
};

// Percentile bootstrap of the pooled IQM with stratified resampling:
// each resample draws episodes with replacement within each replicate.
ConfidenceInterval bootstrap_ci(const ReplicateMatrix& matrix, int resamples,
                                double level, std::mt19937_64& rng);

}  // namespace gpat
