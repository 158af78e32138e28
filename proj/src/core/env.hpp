#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace gpat {

using Rng = std::mt19937_64;

struct StepOutcome {
  double reward = 0.0;
  FeatureVector features;
  std::vector<FeatureVector> agent_features;
  bool terminal = false;
};

// Simultaneous-move environment: all agents observe the current state, commit
// actions, then step() applies one joint transition. Instances are owned by a
// single rollout at a time; clone() copies the full state so counterfactual
// queries never touch the live episode.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string id() const = 0;
  virtual int num_agents() const = 0;
  virtual int action_count(int agent) const = 0;
  virtual int feature_dim() const = 0;
  virtual const WeightVector& team_weight() const = 0;
  virtual int horizon() const = 0;

  virtual void reset(Rng& rng) = 0;
  virtual bool terminal() const = 0;
  virtual int step_count() const = 0;
  virtual StepOutcome step(const JointAction& action, Rng& rng) = 0;

  // Canonical byte-string key for the given agent's observation.
  virtual std::string encode_observation(int agent) const = 0;

  virtual std::unique_ptr<Environment> clone() const = 0;

  virtual std::string render_ascii() const { return {}; }
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual int act(const Environment& env, int agent_index, Rng& rng) = 0;
  virtual int action_space() const = 0;
  virtual bool deterministic() const = 0;
};

// Learner slot is agent 0 throughout; teammates fill slots 1..n-1.
inline constexpr int kLearnerSlot = 0;

EpisodeLog rollout(Environment& env, Policy& learner,
                   const std::vector<Policy*>& teammates, Rng& rng,
                   int horizon);

// Team reward obtained by executing the given joint action from a clone of
// the current (pre-step) state. Transition noise is drawn from noise_seed so
// counterfactual alternatives face identical stochasticity.
double counterfactual_step_reward(const Environment& env,
                                  const JointAction& action,
                                  uint64_t noise_seed);

}  // namespace gpat
