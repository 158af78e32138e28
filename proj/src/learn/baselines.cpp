#include "learn/baselines.hpp"

#include "stats/stats.hpp"

namespace gpat {

namespace {

PolicyLibraryEntry make_entry(SFQLResult&& res, const WeightVector& task_weight,
                              const SFHyperparams& hp, std::string team_id,
                              std::string kind) {
  PolicyLibraryEntry e;
  e.sf = std::move(res.sf);
  e.task_weight = task_weight;
  e.source_team_id = std::move(team_id);
  e.kind = std::move(kind);
  e.seed = hp.seed;
  e.timesteps = res.timesteps;
  e.hyperparams_hash = hp.hash();
  return e;
}

}  // namespace

PolicyLibraryEntry train_oracle(Environment& env,
                                const std::vector<Policy*>& target_teammates,
                                const WeightVector& task_weight,
                                const SFHyperparams& hp, Rng& rng) {
  auto res = sfql_train(env, target_teammates, task_weight, hp, rng);
  return make_entry(std::move(res), task_weight, hp, "target", "oracle");
}

PolicyLibraryEntry train_robust(
    Environment& env, const std::vector<std::vector<Policy*>>& source_teams,
    const WeightVector& task_weight, const SFHyperparams& hp, Rng& rng,
    std::vector<int64_t>* episodes_per_team) {
  if (source_teams.size() < 2)
    throw ConfigError("robust: need at least 2 source teams");
  auto res = sfql_train_multi(env, source_teams, task_weight, hp, rng,
                              episodes_per_team);
  return make_entry(std::move(res), task_weight, hp, "sources", "robust");
}

int plastic_best(const PolicyLibrary& library, Environment& env,
                 const std::vector<Policy*>& target_teammates,
                 int eval_episodes, double gamma, Rng& rng) {
  if (library.entries.empty()) throw InvariantError("plastic: empty library");
  int best_index = 0;
  double best_iqm = 0.0;
  for (size_t i = 0; i < library.entries.size(); ++i) {
    SFLearnerPolicy policy = library.entries[i].policy();
    std::vector<double> returns;
    returns.reserve(eval_episodes);
    for (int ep = 0; ep < eval_episodes; ++ep) {
      auto log = rollout(env, policy, target_teammates, rng, env.horizon());
      returns.push_back(discounted_return(log, gamma));
    }
    double score = iqm(std::move(returns));
    if (i == 0 || score > best_iqm) {
      best_iqm = score;
      best_index = static_cast<int>(i);
    }
  }
  return best_index;
}

}  // namespace gpat
