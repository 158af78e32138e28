#pragma once

#include <functional>

#include "learn/diff_reward.hpp"

namespace gpat {

enum class GPIMode { kWithDR, kWithoutDR };

struct UsageStats {
  std::vector<int64_t> counts;  // steps on which each entry won the argmax
  int64_t total() const;
  std::vector<double> fractions() const;  // sums to 1 when total > 0
};

// Zero-shot GPI execution policy: argmax over learner actions of the max
// over library entries of the entry's value at the current observation.
// Read-only over the library; ties break to the lowest (entry, action) index.
class GPIExecutor final : public Policy {
 public:
  GPIExecutor(const PolicyLibrary* library, GPIMode mode);

  // Returns (action, winning entry index).
  std::pair<int, int> gpi_action(const std::string& obs_key) const;

  int act(const Environment& env, int agent_index, Rng& rng) override;
  int action_space() const override { return library_->n_actions; }
  bool deterministic() const override { return true; }

  int last_winner() const { return last_winner_; }
  GPIMode mode() const { return mode_; }
  const PolicyLibrary& library() const { return *library_; }

 private:
  std::vector<double> entry_values(int entry, const std::string& key) const;

  const PolicyLibrary* library_;
  GPIMode mode_;
  int last_winner_ = -1;
};

struct ZeroShotResult {
  std::vector<EpisodeLog> logs;
  UsageStats usage;
};

// Pure execution against the target team: no table writes anywhere; logs
// carry the winning library index per step.
ZeroShotResult evaluate_zero_shot(GPIExecutor& executor, Environment& env,
                                  const std::vector<Policy*>& target_teammates,
                                  int episodes, Rng& rng,
                                  const std::string& team_id = {});

// Max-over-actions value of placing the learner at each grid cell of the
// given base state, normalized by the grid max (when positive). Cells the
// learner cannot occupy (e.g. object cells) hold NaN.
std::vector<std::vector<double>> value_map(
    const Environment& base_state,
    const std::function<double(const std::string&)>& state_value);

// State value used by value_map for a GPI executor / single policy.
double gpi_state_value(const GPIExecutor& exec, const std::string& key);

}  // namespace gpat
