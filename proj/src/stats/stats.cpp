#include "stats/stats.hpp"

#include <algorithm>
#include <cmath>

#include "core/types.hpp"

namespace gpat {

void ReplicateMatrix::validate() const {
  for (const auto& row : returns)
    if (row.size() != episodes())
      throw ConfigError("ReplicateMatrix must be rectangular");
}

std::vector<double> ReplicateMatrix::pooled() const {
  std::vector<double> all;
  all.reserve(replicates() * episodes());
  for (const auto& row : returns) all.insert(all.end(), row.begin(), row.end());
  return all;
}

double iqm(std::vector<double> values) {
  const size_t n = values.size();
  if (n < 4) throw ConfigError("iqm: need at least 4 values");
  std::sort(values.begin(), values.end());
  const double g = 0.25 * static_cast<double>(n);
  const size_t k = static_cast<size_t>(g);
  const double frac = g - static_cast<double>(k);
  // Boundary elements carry fractional weight, interior elements weight 1.
  double sum = (1.0 - frac) * (values[k] + values[n - 1 - k]);
  double weight = 2.0 * (1.0 - frac);
  for (size_t i = k + 1; i + k + 1 < n; ++i) {
    sum += values[i];
    weight += 1.0;
  }
  return sum / weight;
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw ConfigError("quantile of empty data");
  if (sorted.size() == 1) return sorted[0];
  double h = q * static_cast<double>(sorted.size() - 1);
  size_t lo = static_cast<size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

ConfidenceInterval bootstrap_ci(const ReplicateMatrix& matrix, int resamples,
                                double level, std::mt19937_64& rng) {
  matrix.validate();
  if (matrix.replicates() < 2)
    throw ConfigError("bootstrap_ci: need at least 2 replicates");
  const size_t episodes = matrix.episodes();
  std::uniform_int_distribution<size_t> pick(0, episodes - 1);
  std::vector<double> stats(resamples);
  std::vector<double> pooled(matrix.replicates() * episodes);
  for (int b = 0; b < resamples; ++b) {
    size_t at = 0;
    for (const auto& row : matrix.returns)
      for (size_t e = 0; e < episodes; ++e) pooled[at++] = row[pick(rng)];
    stats[b] = iqm(pooled);
  }
  std::sort(stats.begin(), stats.end());
  double tail = (1.0 - level) / 2.0;
  return {quantile_sorted(stats, tail), quantile_sorted(stats, 1.0 - tail)};
}

}  // namespace gpat
