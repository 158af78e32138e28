#include "learn/gpi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "envs/foraging.hpp"
#include "envs/pursuit.hpp"

namespace gpat {

int64_t UsageStats::total() const {
  int64_t t = 0;
  for (int64_t c : counts) t += c;
  return t;
}

std::vector<double> UsageStats::fractions() const {
  std::vector<double> f(counts.size(), 0.0);
  int64_t t = total();
  if (t == 0) return f;
  for (size_t i = 0; i < counts.size(); ++i)
    f[i] = static_cast<double>(counts[i]) / static_cast<double>(t);
  return f;
}

GPIExecutor::GPIExecutor(const PolicyLibrary* library, GPIMode mode)
    : library_(library), mode_(mode) {
  if (library_->entries.empty())
    throw InvariantError("gpi: library must be non-empty");
  if (mode_ == GPIMode::kWithDR)
    for (const auto& e : library_->entries)
      if (!e.dr_evaluated())
        throw InvariantError(
            "gpi: entry lacks a difference-reward evaluation (team " +
            e.source_team_id + ")");
}

std::vector<double> GPIExecutor::entry_values(int entry,
                                              const std::string& key) const {
  const auto& e = library_->entries[entry];
  if (mode_ == GPIMode::kWithoutDR)
    return e.sf.q_values(key, e.task_weight);
  return dr_q(e, key);
}

std::pair<int, int> GPIExecutor::gpi_action(const std::string& obs_key) const {
  int best_action = 0, best_entry = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < library_->entries.size(); ++i) {
    auto qs = entry_values(static_cast<int>(i), obs_key);
    for (int a = 0; a < library_->n_actions; ++a) {
      if (qs[a] > best) {
        best = qs[a];
        best_action = a;
        best_entry = static_cast<int>(i);
      }
    }
  }
  return {best_action, best_entry};
}

int GPIExecutor::act(const Environment& env, int agent_index, Rng&) {
  auto [action, winner] = gpi_action(env.encode_observation(agent_index));
  last_winner_ = winner;
  return action;
}

ZeroShotResult evaluate_zero_shot(GPIExecutor& executor, Environment& env,
                                  const std::vector<Policy*>& target_teammates,
                                  int episodes, Rng& rng,
                                  const std::string& team_id) {
  ZeroShotResult res;
  res.usage.counts.assign(executor.library().entries.size(), 0);
  for (int ep = 0; ep < episodes; ++ep) {
    EpisodeLog log;
    log.team_id = team_id;
    env.reset(rng);
    for (int t = 0; t < env.horizon() && !env.terminal(); ++t) {
      Transition tr;
      tr.obs = env.encode_observation(kLearnerSlot);
      JointAction action(env.num_agents());
      action[kLearnerSlot] = executor.act(env, kLearnerSlot, rng);
      tr.chosen_library_index = executor.last_winner();
      res.usage.counts[tr.chosen_library_index]++;
      for (size_t i = 0; i < target_teammates.size(); ++i)
        action[i + 1] =
            target_teammates[i]->act(env, static_cast<int>(i) + 1, rng);
      StepOutcome out = env.step(action, rng);
      tr.action = std::move(action);
      tr.reward = out.reward;
      tr.features = std::move(out.features);
      tr.agent_features = std::move(out.agent_features);
      tr.next_obs = env.encode_observation(kLearnerSlot);
      tr.terminal = out.terminal;
      log.transitions.push_back(std::move(tr));
    }
    res.logs.push_back(std::move(log));
  }
  return res;
}

double gpi_state_value(const GPIExecutor& exec, const std::string& key) {
  double best = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < exec.library().entries.size(); ++i) {
    const auto& e = exec.library().entries[i];
    auto qs = exec.mode() == GPIMode::kWithoutDR
                  ? e.sf.q_values(key, e.task_weight)
                  : dr_q(e, key);
    best = std::max(best, *std::max_element(qs.begin(), qs.end()));
  }
  return best;
}

std::vector<std::vector<double>> value_map(
    const Environment& base_state,
    const std::function<double(const std::string&)>& state_value) {
  int grid = 0;
  auto probe = [&](int row, int col) -> std::optional<std::string> {
    auto env = base_state.clone();
    if (auto* f = dynamic_cast<ForagingEnv*>(env.get())) {
      if (f->object_at(row, col) >= 0) return std::nullopt;
      f->set_agent_position(kLearnerSlot, {row, col});
    } else if (auto* p = dynamic_cast<PursuitEnv*>(env.get())) {
      p->set_predator_position(kLearnerSlot, {row, col});
    } else {
      throw CapabilityError("value_map: environment positions not enumerable");
    }
    return env->encode_observation(kLearnerSlot);
  };
  if (auto* f = dynamic_cast<const ForagingEnv*>(&base_state))
    grid = f->config().grid_size;
  else if (auto* p = dynamic_cast<const PursuitEnv*>(&base_state))
    grid = p->config().grid_size;
  else
    throw CapabilityError("value_map: environment positions not enumerable");

  std::vector<std::vector<double>> map(
      grid, std::vector<double>(grid, std::numeric_limits<double>::quiet_NaN()));
  double max_v = 0.0;
  for (int r = 0; r < grid; ++r) {
    for (int c = 0; c < grid; ++c) {
      auto key = probe(r, c);
      if (!key) continue;
      map[r][c] = state_value(*key);
      max_v = std::max(max_v, map[r][c]);
    }
  }
  if (max_v > 0.0)
    for (auto& row : map)
      for (double& v : row)
        if (!std::isnan(v)) v /= max_v;
  return map;
}

}  // namespace gpat
