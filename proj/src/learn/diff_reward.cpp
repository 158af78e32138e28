#include "learn/diff_reward.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace gpat {

namespace {
constexpr uint64_t kCounterfactualStream = 0xc0f2a7ULL;
}

double difference_reward(const Environment& pre_step_env,
                         const JointAction& realized_action,
                         double realized_reward, uint64_t realized_noise_seed,
                         CounterfactualMode mode) {
  const int n_actions = pre_step_env.action_count(kLearnerSlot);
  uint64_t seed = mode == CounterfactualMode::kFrozenNextState
                      ? realized_noise_seed
                      : mix_seed(realized_noise_seed, kCounterfactualStream);
  double total = 0.0;
  JointAction alt = realized_action;
  for (int b = 0; b < n_actions; ++b) {
    alt[kLearnerSlot] = b;
    total += counterfactual_step_reward(pre_step_env, alt, seed);
  }
  return realized_reward - total / n_actions;
}

namespace {

// Shared driver for the two policy-evaluation branches: rolls the entry's
// policy against its source teammates with seed-derived transition noise and
// hands each transition (with its difference reward) to `sink`.
template <typename Sink>
void dr_rollouts(Environment& env, const PolicyLibraryEntry& entry,
                 const std::vector<Policy*>& source_teammates, int episodes,
                 Rng& rng, CounterfactualMode mode, Sink&& sink) {
  if (episodes < 1) throw ConfigError("dr: episodes must be >= 1");
  if (static_cast<int>(source_teammates.size()) != env.num_agents() - 1)
    throw ConfigError("dr: teammate count must be agent count - 1");
  SFLearnerPolicy policy = entry.policy();
  for (int ep = 0; ep < episodes; ++ep) {
    env.reset(rng);
    uint64_t noise_base = rng();
    for (int t = 0; !env.terminal() && t < env.horizon(); ++t) {
      std::string key = env.encode_observation(kLearnerSlot);
      JointAction action(env.num_agents());
      action[kLearnerSlot] = policy.act(env, kLearnerSlot, rng);
      for (size_t i = 0; i < source_teammates.size(); ++i)
        action[i + 1] =
            source_teammates[i]->act(env, static_cast<int>(i) + 1, rng);

      uint64_t noise_seed = mix_seed(noise_base, static_cast<uint64_t>(t));
      auto pre_step = env.clone();
      Rng noise(noise_seed);
      StepOutcome out = env.step(action, noise);
      double dr = difference_reward(*pre_step, action, out.reward, noise_seed,
                                    mode);
      sink(key, action[kLearnerSlot], out, dr,
           env.encode_observation(kLearnerSlot));
    }
  }
}

}  // namespace

std::vector<DRSample> collect_dr_dataset(
    Environment& env, const PolicyLibraryEntry& entry,
    const std::vector<Policy*>& source_teammates, int episodes, Rng& rng,
    CounterfactualMode mode) {
  std::vector<DRSample> samples;
  dr_rollouts(env, entry, source_teammates, episodes, rng, mode,
              [&](const std::string&, int, const StepOutcome& out, double dr,
                  const std::string&) {
                samples.push_back({out.features, dr});
              });
  return samples;
}

DRWeight fit_dr_weights(const std::vector<DRSample>& samples) {
  if (samples.empty()) throw ConfigError("fit_dr_weights: empty dataset");
  const int d = static_cast<int>(samples[0].features.size());
  Eigen::MatrixXd ata = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd atb = Eigen::VectorXd::Zero(d);
  for (const auto& s : samples) {
    Eigen::Map<const Eigen::VectorXd> x(s.features.data(), d);
    ata.noalias() += x * x.transpose();
    atb.noalias() += x * s.dr;
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(ata);
  lu.setThreshold(1e-9);
  DRWeight out;
  out.diag.rank = static_cast<int>(lu.rank());
  out.diag.sample_count = static_cast<int64_t>(samples.size());
  Eigen::VectorXd w;
  if (out.diag.rank < d) {
    out.diag.ridge_applied = true;
    w = (ata + 1e-10 * Eigen::MatrixXd::Identity(d, d)).ldlt().solve(atb);
  } else {
    w = ata.ldlt().solve(atb);
  }
  out.w.assign(w.data(), w.data() + d);

  double ss = 0.0;
  for (const auto& s : samples) {
    double pred = dot(s.features, out.w);
    ss += (s.dr - pred) * (s.dr - pred);
  }
  out.diag.residual_rms = std::sqrt(ss / samples.size());
  return out;
}

std::vector<double> dr_q(const PolicyLibraryEntry& entry,
                         const std::string& obs_key) {
  if (entry.dr_weight) return entry.sf.q_values(obs_key, *entry.dr_weight);
  if (entry.dr_q) {
    auto it = entry.dr_q->find(obs_key);
    if (it != entry.dr_q->end()) return it->second;
    return std::vector<double>(entry.sf.n_actions(), 0.0);
  }
  throw InvariantError("dr_q: entry has no difference-reward evaluation");
}

QTable td_policy_eval_dr(Environment& env, const PolicyLibraryEntry& entry,
                         const std::vector<Policy*>& source_teammates,
                         int episodes, double alpha, double gamma, Rng& rng,
                         CounterfactualMode mode) {
  const int n_actions = env.action_count(kLearnerSlot);
  QTable q;
  SFLearnerPolicy policy = entry.policy();
  auto values = [&](const std::string& key) -> std::vector<double>& {
    auto it = q.find(key);
    if (it == q.end())
      it = q.emplace(key, std::vector<double>(n_actions, 0.0)).first;
    return it->second;
  };
  dr_rollouts(env, entry, source_teammates, episodes, rng, mode,
              [&](const std::string& key, int action, const StepOutcome& out,
                  double dr, const std::string& next_key) {
                double bootstrap = 0.0;
                if (!out.terminal) {
                  int next_action = entry.sf.greedy_action(next_key,
                                                           entry.task_weight);
                  auto it = q.find(next_key);
                  if (it != q.end()) bootstrap = it->second[next_action];
                }
                double& qv = values(key)[action];
                qv += alpha * (dr + gamma * bootstrap - qv);
              });
  return q;
}

}  // namespace gpat
