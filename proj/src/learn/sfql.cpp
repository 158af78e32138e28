#include "learn/sfql.hpp"

#include <sstream>

namespace gpat {

FeatureVector SFTable::psi(const std::string& key, int action) const {
  auto it = table_.find(key);
  if (it == table_.end()) return FeatureVector(feature_dim_, 0.0);
  return FeatureVector(it->second.begin() + action * feature_dim_,
                       it->second.begin() + (action + 1) * feature_dim_);
}

double SFTable::q(const std::string& key, int action,
                  const WeightVector& w) const {
  auto it = table_.find(key);
  if (it == table_.end()) return 0.0;
  const double* p = it->second.data() + action * feature_dim_;
  double s = 0.0;
  for (int i = 0; i < feature_dim_; ++i) s += p[i] * w[i];
  return s;
}

std::vector<double> SFTable::q_values(const std::string& key,
                                      const WeightVector& w) const {
  std::vector<double> out(n_actions_, 0.0);
  auto it = table_.find(key);
  if (it == table_.end()) return out;
  for (int a = 0; a < n_actions_; ++a) {
    const double* p = it->second.data() + a * feature_dim_;
    for (int i = 0; i < feature_dim_; ++i) out[a] += p[i] * w[i];
  }
  return out;
}

int SFTable::greedy_action(const std::string& key,
                           const WeightVector& w) const {
  auto qs = q_values(key, w);
  int best = 0;
  for (int a = 1; a < n_actions_; ++a)
    if (qs[a] > qs[best]) best = a;
  return best;
}

double* SFTable::row(const std::string& key, int action) {
  auto it = table_.find(key);
  if (it == table_.end())
    it = table_.emplace(key, std::vector<double>(n_actions_ * feature_dim_, 0.0))
             .first;
  return it->second.data() + action * feature_dim_;
}

void SFHyperparams::validate() const {
  if (alpha < 0.0) throw ConfigError("sfql: alpha must be non-negative");
  if (epsilon < 0.0 || epsilon > 1.0)
    throw ConfigError("sfql: epsilon must be in [0, 1]");
  if (gamma < 0.0 || gamma >= 1.0) throw ConfigError("sfql: gamma in [0, 1)");
  if (total_timesteps < 0) throw ConfigError("sfql: negative timestep budget");
}

std::string SFHyperparams::hash() const {
  std::ostringstream s;
  s << alpha << '|' << epsilon << '|' << gamma << '|' << total_timesteps;
  uint64_t h = 1469598103934665603ULL;
  for (char c : s.str()) h = (h ^ static_cast<uint8_t>(c)) * 1099511628211ULL;
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

void sf_update(SFTable& sf, const std::string& key, int action,
               const FeatureVector& phi, const std::string& next_key,
               bool terminal, const WeightVector& w, double alpha) {
  const int d = sf.feature_dim();
  FeatureVector bootstrap(d, 0.0);
  if (!terminal) {
    int a_star = sf.greedy_action(next_key, w);
    bootstrap = sf.psi(next_key, a_star);
  }
  double* row = sf.row(key, action);
  const double g = sf.gamma();
  for (int i = 0; i < d; ++i)
    row[i] += alpha * (phi[i] + g * bootstrap[i] - row[i]);
}

int SFLearnerPolicy::act(const Environment& env, int agent_index, Rng&) {
  return sf_->greedy_action(env.encode_observation(agent_index), weight_);
}

SFQLResult sfql_train(Environment& env, const std::vector<Policy*>& teammates,
                      const WeightVector& task_weight, const SFHyperparams& hp,
                      Rng& rng) {
  std::vector<std::vector<Policy*>> teams = {teammates};
  return sfql_train_multi(env, teams, task_weight, hp, rng);
}

SFQLResult sfql_train_multi(
    Environment& env, const std::vector<std::vector<Policy*>>& teams,
    const WeightVector& task_weight, const SFHyperparams& hp, Rng& rng,
    std::vector<int64_t>* episodes_per_team) {
  hp.validate();
  if (teams.empty()) throw ConfigError("sfql: no teammate rosters given");
  if (env.feature_dim() != static_cast<int>(task_weight.size()))
    throw ConfigError("sfql: task_weight length must equal env feature dim");
  for (const auto& team : teams)
    if (static_cast<int>(team.size()) != env.num_agents() - 1)
      throw ConfigError("sfql: teammate count must be agent count - 1");

  SFQLResult res;
  res.sf = SFTable(env.action_count(kLearnerSlot), env.feature_dim(), hp.gamma);
  if (episodes_per_team) episodes_per_team->assign(teams.size(), 0);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> rand_action(
      0, env.action_count(kLearnerSlot) - 1);
  std::uniform_int_distribution<size_t> rand_team(0, teams.size() - 1);

  while (res.timesteps < hp.total_timesteps) {
    size_t team_idx = teams.size() == 1 ? 0 : rand_team(rng);
    const auto& teammates = teams[team_idx];
    if (episodes_per_team) (*episodes_per_team)[team_idx]++;
    env.reset(rng);
    res.episodes++;
    while (!env.terminal() && res.timesteps < hp.total_timesteps) {
      std::string key = env.encode_observation(kLearnerSlot);
      int learner_action = unit(rng) < hp.epsilon
                               ? rand_action(rng)
                               : res.sf.greedy_action(key, task_weight);
      JointAction action(env.num_agents());
      action[kLearnerSlot] = learner_action;
      for (size_t i = 0; i < teammates.size(); ++i)
        action[i + 1] = teammates[i]->act(env, static_cast<int>(i) + 1, rng);
      StepOutcome out = env.step(action, rng);
      std::string next_key = env.encode_observation(kLearnerSlot);
      sf_update(res.sf, key, learner_action, out.features, next_key,
                out.terminal, task_weight, hp.alpha);
      res.timesteps++;
    }
  }
  return res;
}

}  // namespace gpat
