#include "core/env.hpp"

namespace gpat {

EpisodeLog rollout(Environment& env, Policy& learner,
                   const std::vector<Policy*>& teammates, Rng& rng,
                   int horizon) {
  if (horizon <= 0) throw ConfigError("rollout: horizon must be positive");
  if (static_cast<int>(teammates.size()) != env.num_agents() - 1)
    throw ConfigError("rollout: teammate count must be agent count - 1");

  EpisodeLog log;
  env.reset(rng);
  for (int t = 0; t < horizon && !env.terminal(); ++t) {
    Transition tr;
    tr.obs = env.encode_observation(kLearnerSlot);
    JointAction action(env.num_agents());
    action[kLearnerSlot] = learner.act(env, kLearnerSlot, rng);
    for (size_t i = 0; i < teammates.size(); ++i)
      action[i + 1] = teammates[i]->act(env, static_cast<int>(i) + 1, rng);
    StepOutcome out = env.step(action, rng);
    tr.action = std::move(action);
    tr.reward = out.reward;
    tr.features = std::move(out.features);
    tr.agent_features = std::move(out.agent_features);
    tr.next_obs = env.encode_observation(kLearnerSlot);
    tr.terminal = out.terminal;
    log.transitions.push_back(std::move(tr));
  }
  return log;
}

double counterfactual_step_reward(const Environment& env,
                                  const JointAction& action,
                                  uint64_t noise_seed) {
  if (env.terminal())
    throw CapabilityError("counterfactual query on a terminal state");
  auto shadow = env.clone();
  Rng noise(noise_seed);
  return shadow->step(action, noise).reward;
}

}  // namespace gpat
