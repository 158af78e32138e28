#pragma once

#include <vector>

#include "core/env.hpp"
#include "envs/foraging.hpp"  // GridAction, Cell, ObsEncoding

namespace gpat {

enum class PreyKind { kEasy, kHard };

struct PreySpec {
  PreyKind kind = PreyKind::kEasy;
  Cell spawn;
  // Axis-aligned movement region, inclusive bounds.
  int row_min = 0, row_max = 0, col_min = 0, col_max = 0;
};

struct PursuitConfig {
  int grid_size = 13;
  int n_predators = 3;
  std::vector<PreySpec> prey;  // empty -> default 4-prey layout
  int horizon = 75;
  WeightVector team_weight;  // defaults to ones, one slot per prey
  ObsEncoding obs_encoding = ObsEncoding::kCompact;
  // Used by the default layout: half-width of the box around each spawn.
  int region_radius = 2;
  void finalize();  // fills defaults, validates
};

// Predator-prey gridworld: predators move first, captures resolve, then the
// surviving prey random-walk within their regions. An easy prey is captured
// by one predator on its cell; a hard prey needs two predators on or
// orthogonally adjacent to its cell in the same post-move state.
class PursuitEnv final : public Environment {
 public:
  explicit PursuitEnv(PursuitConfig config);

  std::string id() const override { return "pursuit"; }
  int num_agents() const override { return config_.n_predators; }
  int action_count(int) const override { return kGridActionCount; }
  int feature_dim() const override {
    return static_cast<int>(config_.prey.size());
  }
  const WeightVector& team_weight() const override {
    return config_.team_weight;
  }
  int horizon() const override { return config_.horizon; }

  void reset(Rng& rng) override;
  bool terminal() const override;
  int step_count() const override { return step_; }
  StepOutcome step(const JointAction& action, Rng& rng) override;
  std::string encode_observation(int agent) const override;
  std::unique_ptr<Environment> clone() const override;
  std::string render_ascii() const override;

  const PursuitConfig& config() const { return config_; }
  Cell predator_position(int i) const { return predators_[i]; }
  Cell prey_position(int i) const { return prey_pos_[i]; }
  bool prey_alive(int i) const { return alive_[i]; }
  void set_predator_position(int i, Cell c) { predators_[i] = c; }

 private:
  Cell moved(Cell from, int action) const;
  std::string encode_full(int agent) const;
  std::string encode_compact(int agent) const;

  PursuitConfig config_;
  std::vector<Cell> predators_;
  std::vector<Cell> prey_pos_;
  std::vector<uint8_t> alive_;
  int step_ = 0;
};

// Greedy shortest-path pursuit of the nearest alive preferred prey;
// tie-break by prey index, vertical movement before horizontal.
class ScriptedPredator final : public Policy {
 public:
  explicit ScriptedPredator(std::vector<int> preferred_prey);
  int act(const Environment& env, int agent_index, Rng& rng) override;
  int action_space() const override { return kGridActionCount; }
  bool deterministic() const override { return true; }

 private:
  std::vector<int> preferred_;
};

}  // namespace gpat
