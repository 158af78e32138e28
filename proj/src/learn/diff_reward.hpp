#pragma once

#include "learn/library.hpp"

namespace gpat {

// How counterfactual learner actions are resolved. Resimulate replays the
// transition from a cloned state with fresh (but shared across alternatives)
// transition noise; frozen reuses the realized transition's noise draw.
enum class CounterfactualMode { kResimulate, kFrozenNextState };

struct DRSample {
  FeatureVector features;  // phi(s, a, s')
  double dr = 0.0;
};

struct DRWeight {
  WeightVector w;
  DRDiagnostics diag;
};

// Eq.-style difference reward under a uniform learner policy, enumerated
// exactly over the learner's discrete action set:
//   dr = realized_reward - (1/|A|) sum_b r(s, <a^-a, b>).
// `pre_step_env` must hold the state the realized action was taken from.
double difference_reward(const Environment& pre_step_env,
                         const JointAction& realized_action,
                         double realized_reward, uint64_t realized_noise_seed,
                         CounterfactualMode mode);

// Rolls out the entry's greedy policy with its source teammates and records
// one (phi, dr) sample per transition. Transition noise is driven by seeds
// derived from the rng so frozen-mode counterfactuals can replay it.
std::vector<DRSample> collect_dr_dataset(
    Environment& env, const PolicyLibraryEntry& entry,
    const std::vector<Policy*>& source_teammates, int episodes, Rng& rng,
    CounterfactualMode mode = CounterfactualMode::kResimulate);

// Ordinary least squares of dr on features via normal equations; a ridge of
// 1e-10 is added only when the design is rank-deficient (reported in diag).
DRWeight fit_dr_weights(const std::vector<DRSample>& samples);

// Per-action difference-reward values for the entry at one observation.
// Linear branch: psi . w_dr; general branch: Q-table lookup (zeros unseen).
std::vector<double> dr_q(const PolicyLibraryEntry& entry,
                         const std::string& obs_key);

// On-policy TD(0) policy evaluation of the entry's fixed policy against its
// source teammates with respect to the learner's difference reward.
QTable td_policy_eval_dr(Environment& env, const PolicyLibraryEntry& entry,
                         const std::vector<Policy*>& source_teammates,
                         int episodes, double alpha, double gamma, Rng& rng,
                         CounterfactualMode mode = CounterfactualMode::kResimulate);

}  // namespace gpat
