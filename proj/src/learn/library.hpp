#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "learn/sfql.hpp"

namespace gpat {

// Q-table for the general-reward branch: key -> one value per learner action.
using QTable = std::unordered_map<std::string, std::vector<double>>;

struct DRDiagnostics {
  double residual_rms = 0.0;
  int64_t sample_count = 0;
  int rank = 0;
  bool ridge_applied = false;
  int64_t td_episodes = 0;
  double td_alpha = 0.0;
};

struct PolicyLibraryEntry {
  SFTable sf;
  WeightVector task_weight;
  std::string source_team_id;
  std::string kind = "library";  // library | oracle | robust
  uint64_t seed = 0;
  int64_t timesteps = 0;
  std::string hyperparams_hash;
  std::optional<WeightVector> dr_weight;
  std::optional<QTable> dr_q;
  DRDiagnostics dr_diag;

  bool dr_evaluated() const { return dr_weight.has_value() || dr_q.has_value(); }
  SFLearnerPolicy policy() const { return SFLearnerPolicy(&sf, task_weight); }
};

struct PolicyLibrary {
  int feature_dim = 0;
  int n_actions = 0;
  double gamma = 0.0;
  std::vector<PolicyLibraryEntry> entries;
};

// Versioned binary container: header (magic, version, feature_dim, n_actions,
// gamma, entry count), per-entry metadata and length-prefixed records, then
// an FNV-1a checksum of the payload. Writes are atomic (tmp file + rename).
void save_library(const PolicyLibrary& lib, const std::string& path);
PolicyLibrary load_library(const std::string& path);

uint64_t file_checksum(const std::string& path);

}  // namespace gpat
