#pragma once

#include "learn/library.hpp"

namespace gpat {

// Oracle: SFQL trained directly with the target team; the 100% reference
// for percentage-optimality reporting.
PolicyLibraryEntry train_oracle(Environment& env,
                                const std::vector<Policy*>& target_teammates,
                                const WeightVector& task_weight,
                                const SFHyperparams& hp, Rng& rng);

// Robust: one SFQL policy trained with the source team resampled uniformly
// at each episode start; hp.total_timesteps is the whole budget (library
// budget parity is the caller's responsibility).
PolicyLibraryEntry train_robust(
    Environment& env, const std::vector<std::vector<Policy*>>& source_teams,
    const WeightVector& task_weight, const SFHyperparams& hp, Rng& rng,
    std::vector<int64_t>* episodes_per_team = nullptr);

// PLASTIC best-case selection: evaluates each library entry alone against
// the target team and returns the index with the highest IQM return
// (tie -> lowest index).
int plastic_best(const PolicyLibrary& library, Environment& env,
                 const std::vector<Policy*>& target_teammates,
                 int eval_episodes, double gamma, Rng& rng);

}  // namespace gpat
