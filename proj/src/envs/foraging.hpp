#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "core/env.hpp"

namespace gpat {

enum class ObsEncoding { kFull, kCompact };

// Actions shared by all gridworld agents.
enum GridAction { kUp = 0, kDown = 1, kLeft = 2, kRight = 3, kStay = 4 };
inline constexpr int kGridActionCount = 5;

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

struct ForagingConfig {
  int grid_size = 8;
  int objects_per_type = 5;
  static constexpr int kNumTypes = 3;  // red, orange, yellow
  int horizon = 50;
  WeightVector team_weight = {1.0, 1.0, 1.0};
  ObsEncoding obs_encoding = ObsEncoding::kFull;
  void validate() const;
};

// Agent-centric toroidal observation: one binary channel per object type,
// one for the teammate, one for walls (all-zero on the open grid).
struct ForagingObservation {
  static constexpr int kChannels = 5;
  int grid_size = 0;
  std::array<std::vector<uint8_t>, kChannels> channels;  // row-major
};

// Two-agent cooperative foraging: three object types clustered in separate
// quadrants, agents spawn in the lower-left quadrant, stepping onto an
// object collects it. phi counts objects collected per type per step.
class ForagingEnv final : public Environment {
 public:
  explicit ForagingEnv(ForagingConfig config);

  std::string id() const override { return "foraging"; }
  int num_agents() const override { return 2; }
  int action_count(int) const override { return kGridActionCount; }
  int feature_dim() const override { return ForagingConfig::kNumTypes; }
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

  ForagingObservation observe(int agent) const;

  const ForagingConfig& config() const { return config_; }
  Cell agent_position(int agent) const { return agents_[agent]; }
  void set_agent_position(int agent, Cell c) { agents_[agent] = c; }
  // -1 when empty, else object type.
  int object_at(int row, int col) const {
    return grid_[row * config_.grid_size + col];
  }
  void clear_objects() { std::fill(grid_.begin(), grid_.end(), -1); }
  void place_object(int row, int col, int type);
  std::vector<int> remaining_per_type() const;

 private:
  Cell moved(Cell from, int action) const;
  std::string encode_full(int agent) const;
  std::string encode_compact(int agent) const;

  ForagingConfig config_;
  std::array<Cell, 2> agents_;
  std::vector<int8_t> grid_;  // -1 empty, else type
  int step_ = 0;
};

// Greedy scripted agent: shortest path toward the nearest object whose
// preference weight is strictly positive; stays if none remain.
// Tie-break by (row, col, type index); vertical movement before horizontal.
class ScriptedForager final : public Policy {
 public:
  explicit ScriptedForager(WeightVector preference);
  int act(const Environment& env, int agent_index, Rng& rng) override;
  int action_space() const override { return kGridActionCount; }
  bool deterministic() const override { return true; }

 private:
  WeightVector preference_;
};

// Teammate that draws one of several scripted preferences at each episode
// start and follows it for the whole episode. Models a partner whose behavior
// sits "between" several pure strategies.
class MixtureForager final : public Policy {
 public:
  explicit MixtureForager(std::vector<WeightVector> preferences);
  int act(const Environment& env, int agent_index, Rng& rng) override;
  int action_space() const override { return kGridActionCount; }
  bool deterministic() const override { return false; }

 private:
  std::vector<ScriptedForager> modes_;
  size_t current_ = 0;
  int last_step_ = -1;
};

}  // namespace gpat
