#pragma once

#include <map>

#include "exp/config.hpp"
#include "learn/gpi.hpp"
#include "stats/stats.hpp"

namespace gpat {

struct ResultRow {
  std::string method;
  double iqm = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double pct_optimality = -1.0;  // -1 when no oracle row exists
  std::vector<double> usage;     // per-entry fractions; empty if n/a
  std::vector<double> learner_objects;   // per-type episode means (foraging)
  std::vector<double> teammate_objects;
};

struct ExperimentResults {
  std::vector<ResultRow> rows;
  std::map<std::string, ReplicateMatrix> matrices;
  std::string results_dir;
};

// Artifact paths are content-addressed by the config hash so reruns with an
// unchanged config are idempotent.
std::string library_path(const ExperimentConfig& config, int replicate);
std::string robust_path(const ExperimentConfig& config, int replicate);
int training_replicates(const ExperimentConfig& config);

// Stage 1: train one SFQL policy per source team (plus the robust baseline
// policy when requested) and write the per-replicate library files.
void cmd_pretrain(const ExperimentConfig& config);

// Stage 2: populate difference-reward value functions for every library
// entry from source-team rollouts only. Errors if already fitted and !force.
void cmd_fit_dr(const ExperimentConfig& config, bool force = false);

// Stage 3: evaluate every configured method against the target team and
// write results.csv, per-method matrices, usage stats and the run manifest.
ExperimentResults cmd_eval(const ExperimentConfig& config,
                           const std::vector<std::string>& methods_override =
                               {},
                           const std::string& render_mode = "none",
                           int jobs = 1);

// All three stages in sequence.
ExperimentResults run_experiment(const ExperimentConfig& config, int jobs = 1);

// Human-readable table from a results directory.
std::string cmd_report(const std::string& results_dir);

// Per-type per-agent episode means from foraging logs (learner, teammates).
std::pair<std::vector<double>, std::vector<double>> objects_collected_stats(
    const std::vector<EpisodeLog>& logs, int feature_dim);

}  // namespace gpat
