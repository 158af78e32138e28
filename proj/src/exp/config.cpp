#include "exp/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gpat {

using nlohmann::json;

namespace {

WeightVector as_weights(const json& j) {
  WeightVector w;
  for (const auto& v : j) w.push_back(v.get<double>());
  return w;
}

TeamSpec parse_team(const json& j) {
  TeamSpec team;
  team.id = j.at("id").get<std::string>();
  for (const auto& tj : j.at("teammates")) {
    TeammateSpec t;
    t.type = tj.value("type", "scripted");
    if (tj.contains("preference")) t.preference = as_weights(tj["preference"]);
    if (tj.contains("preferences"))
      for (const auto& pj : tj["preferences"])
        t.preferences.push_back(as_weights(pj));
    if (tj.contains("preferred_prey"))
      for (const auto& p : tj["preferred_prey"]) t.preferred_prey.push_back(p);
    team.teammates.push_back(std::move(t));
  }
  return team;
}

// Always-stay partner used when training sfql teammates in isolation.
class StationaryPolicy final : public Policy {
 public:
  int act(const Environment&, int, Rng&) override { return kStay; }
  int action_space() const override { return kGridActionCount; }
  bool deterministic() const override { return true; }
};

// Owns the tables behind an sfql-trained teammate policy.
class TrainedTeammate final : public Policy {
 public:
  TrainedTeammate(SFTable sf, WeightVector weight)
      : sf_(std::move(sf)), weight_(std::move(weight)) {}
  int act(const Environment& env, int agent_index, Rng&) override {
    return sf_.greedy_action(env.encode_observation(agent_index), weight_);
  }
  int action_space() const override { return sf_.n_actions(); }
  bool deterministic() const override { return true; }

 private:
  SFTable sf_;
  WeightVector weight_;
};

}  // namespace

uint64_t ExperimentConfig::base_seed() const {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : hash) h = (h ^ c) * 1099511628211ULL;
  return mix_seed(h, seed);
}

void ExperimentConfig::validate() const {
  if (env.type != "foraging" && env.type != "pursuit")
    throw ConfigError("unknown env type: " + env.type);
  if (gamma < 0.0 || gamma >= 1.0) throw ConfigError("gamma must be in [0,1)");
  if (source_teams.empty()) throw ConfigError("source_teams must be non-empty");
  for (const auto& team : source_teams)
    if (team.id == target_team.id)
      throw ConfigError("target_team id must not appear in source_teams: " +
                        team.id);
  if (target_team.teammates.empty())
    throw ConfigError("target_team needs at least one teammate");
  if (eval.replicates < 1) throw ConfigError("eval.replicates must be >= 1");
  if (eval.episodes < 4) throw ConfigError("eval.episodes must be >= 4");
  if (dr.branch != "linear" && dr.branch != "general")
    throw ConfigError("dr.branch must be linear or general");
  if (eval.replicate_mode != "retrain" && eval.replicate_mode != "reseed")
    throw ConfigError("eval.replicate_mode must be retrain or reseed");
  for (const auto& m : methods)
    if (m != "oracle" && m != "gpat" && m != "gpat_nodr" && m != "robust" &&
        m != "plastic")
      throw ConfigError("unknown method: " + m);
  // every source team must size-match the target team
  for (const auto& team : source_teams)
    if (team.teammates.size() != target_team.teammates.size())
      throw ConfigError("source and target teams must have equal size");
}

std::unique_ptr<Environment> ExperimentConfig::make_env() const {
  if (env.type == "foraging") {
    ForagingConfig fc;
    if (env.grid_size > 0) fc.grid_size = env.grid_size;
    fc.objects_per_type = env.objects_per_type;
    fc.horizon = env.horizon > 0 ? env.horizon : (fc.grid_size >= 8 ? 50 : 30);
    if (!env.team_weight.empty()) fc.team_weight = env.team_weight;
    fc.obs_encoding = env.obs_encoding;
    return std::make_unique<ForagingEnv>(fc);
  }
  PursuitConfig pc;
  if (env.grid_size > 0) pc.grid_size = env.grid_size;
  pc.n_predators = env.n_predators;
  pc.region_radius = env.region_radius;
  if (env.horizon > 0) pc.horizon = env.horizon;
  if (!env.team_weight.empty()) pc.team_weight = env.team_weight;
  pc.obs_encoding = env.obs_encoding;
  return std::make_unique<PursuitEnv>(pc);
}

std::vector<std::unique_ptr<Policy>> ExperimentConfig::make_team(
    const TeamSpec& team, uint64_t train_seed) const {
  std::vector<std::unique_ptr<Policy>> out;
  for (size_t i = 0; i < team.teammates.size(); ++i) {
    const auto& spec = team.teammates[i];
    if (spec.type == "scripted") {
      out.push_back(std::make_unique<ScriptedForager>(spec.preference));
    } else if (spec.type == "mixture") {
      out.push_back(std::make_unique<MixtureForager>(spec.preferences));
    } else if (spec.type == "scripted_predator") {
      out.push_back(std::make_unique<ScriptedPredator>(spec.preferred_prey));
    } else if (spec.type == "sfql") {
      // Teammate trained with its own biased weights against a stationary
      // partner; deterministic given (config, team, slot).
      auto env_ptr = make_env();
      SFHyperparams hp;
      hp.alpha = train.alpha;
      hp.epsilon = train.epsilon;
      hp.gamma = gamma;
      hp.total_timesteps = train.teammate_timesteps;
      hp.seed = mix_seed(train_seed, i);
      Rng rng(hp.seed);
      StationaryPolicy stay;
      std::vector<Policy*> partners(env_ptr->num_agents() - 1, &stay);
      auto res = sfql_train(*env_ptr, partners, spec.preference, hp, rng);
      out.push_back(std::make_unique<TrainedTeammate>(std::move(res.sf),
                                                      spec.preference));
    } else {
      throw ConfigError("unknown teammate type: " + spec.type);
    }
  }
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  ExperimentConfig c;
  try {
    const auto& je = j.at("env");
    c.env.type = je.value("type", "foraging");
    c.env.grid_size = je.value("grid_size", 0);
    c.env.objects_per_type = je.value("objects_per_type", 5);
    c.env.horizon = je.value("horizon", 0);
    if (je.contains("team_weight"))
      c.env.team_weight = as_weights(je["team_weight"]);
    std::string enc = je.value("obs_encoding",
                               c.env.type == "pursuit" ? "compact" : "full");
    if (enc == "full")
      c.env.obs_encoding = ObsEncoding::kFull;
    else if (enc == "compact")
      c.env.obs_encoding = ObsEncoding::kCompact;
    else
      throw ConfigError("obs_encoding must be full or compact");
    c.env.n_predators = je.value("n_predators", 3);
    c.env.region_radius = je.value("region_radius", 2);

    c.gamma = j.value("gamma", 0.95);
    c.seed = j.value("seed", 0ULL);
    for (const auto& tj : j.at("source_teams"))
      c.source_teams.push_back(parse_team(tj));
    c.target_team = parse_team(j.at("target_team"));

    if (j.contains("train")) {
      const auto& jt = j["train"];
      c.train.timesteps = jt.value("timesteps", c.train.timesteps);
      c.train.alpha = jt.value("alpha", c.train.alpha);
      c.train.epsilon = jt.value("epsilon", c.train.epsilon);
      c.train.teammate_timesteps =
          jt.value("teammate_timesteps", c.train.teammate_timesteps);
    }
    if (j.contains("dr")) {
      const auto& jd = j["dr"];
      c.dr.branch = jd.value("branch", c.dr.branch);
      c.dr.episodes = jd.value("episodes", c.dr.episodes);
      c.dr.td_episodes = jd.value("td_episodes", c.dr.td_episodes);
      c.dr.td_alpha = jd.value("td_alpha", c.dr.td_alpha);
      std::string cf = jd.value("counterfactual", "resimulate");
      if (cf == "resimulate")
        c.dr.counterfactual = CounterfactualMode::kResimulate;
      else if (cf == "frozen_next_state")
        c.dr.counterfactual = CounterfactualMode::kFrozenNextState;
      else
        throw ConfigError("dr.counterfactual must be resimulate or "
                          "frozen_next_state");
    }
    if (j.contains("eval")) {
      const auto& jv = j["eval"];
      c.eval.episodes = jv.value("episodes", c.eval.episodes);
      c.eval.replicates = jv.value("replicates", c.eval.replicates);
      c.eval.resamples = jv.value("resamples", c.eval.resamples);
      c.eval.ci_level = jv.value("ci_level", c.eval.ci_level);
      c.eval.plastic_episodes =
          jv.value("plastic_episodes", c.eval.plastic_episodes);
      c.eval.replicate_mode =
          jv.value("replicate_mode", c.eval.replicate_mode);
    }
    if (j.contains("methods"))
      for (const auto& m : j["methods"]) c.methods.push_back(m);
    else
      c.methods = {"oracle", "gpat", "gpat_nodr", "robust", "plastic"};
    c.output_dir = j.value("output_dir", "out");
    c.reuse = j.value("reuse", false);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }

  // Content hash of the canonical re-serialization; addresses artifacts.
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : j.dump()) h = (h ^ ch) * 1099511628211ULL;
  std::ostringstream hex;
  hex << std::hex << h;
  c.hash = hex.str();

  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingArtifactError("config file not found: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace gpat
