#pragma once

#include <unordered_map>
#include <vector>

#include "core/env.hpp"

namespace gpat {

// Tabular successor features over encoded observations. Rows hold
// n_actions * feature_dim doubles; unseen keys read as zero.
class SFTable {
 public:
  SFTable() = default;
  SFTable(int n_actions, int feature_dim, double gamma)
      : n_actions_(n_actions), feature_dim_(feature_dim), gamma_(gamma) {}

  int n_actions() const { return n_actions_; }
  int feature_dim() const { return feature_dim_; }
  double gamma() const { return gamma_; }

  FeatureVector psi(const std::string& key, int action) const;
  double q(const std::string& key, int action, const WeightVector& w) const;
  std::vector<double> q_values(const std::string& key,
                               const WeightVector& w) const;
  int greedy_action(const std::string& key, const WeightVector& w) const;

  double* row(const std::string& key, int action);  // inserts zeros
  const std::unordered_map<std::string, std::vector<double>>& data() const {
    return table_;
  }
  std::unordered_map<std::string, std::vector<double>>& data() {
    return table_;
  }
  size_t size() const { return table_.size(); }

 private:
  int n_actions_ = 0;
  int feature_dim_ = 0;
  double gamma_ = 0.0;
  std::unordered_map<std::string, std::vector<double>> table_;
};

struct SFHyperparams {
  double alpha = 0.1;
  double epsilon = 0.1;
  double gamma = 0.95;
  int64_t total_timesteps = 200000;
  uint64_t seed = 0;
  void validate() const;
  std::string hash() const;
};

// One TD(0) successor-feature update:
//   psi(s,a) += alpha * (phi + gamma * psi(s', a*) - psi(s,a)),
// with a* greedy under w at s' and the bootstrap term dropped on terminal.
void sf_update(SFTable& sf, const std::string& key, int action,
               const FeatureVector& phi, const std::string& next_key,
               bool terminal, const WeightVector& w, double alpha);

// Greedy evaluation policy over psi . w; deterministic, ties to the lowest
// action index, never consults the rng.
class SFLearnerPolicy final : public Policy {
 public:
  SFLearnerPolicy(const SFTable* sf, WeightVector task_weight)
      : sf_(sf), weight_(std::move(task_weight)) {}
  int act(const Environment& env, int agent_index, Rng& rng) override;
  int action_space() const override { return sf_->n_actions(); }
  bool deterministic() const override { return true; }
  const WeightVector& weight() const { return weight_; }
  const SFTable& sf() const { return *sf_; }

 private:
  const SFTable* sf_;
  WeightVector weight_;
};

struct SFQLResult {
  SFTable sf;
  int64_t timesteps = 0;
  int64_t episodes = 0;
};

SFQLResult sfql_train(Environment& env, const std::vector<Policy*>& teammates,
                      const WeightVector& task_weight, const SFHyperparams& hp,
                      Rng& rng);

// Robust baseline variant: one of the teammate rosters is drawn uniformly at
// the start of every episode. Returns per-roster episode counts via out param.
SFQLResult sfql_train_multi(
    Environment& env, const std::vector<std::vector<Policy*>>& teams,
    const WeightVector& task_weight, const SFHyperparams& hp, Rng& rng,
    std::vector<int64_t>* episodes_per_team = nullptr);

}  // namespace gpat
