#pragma once

#include <memory>
#include <string>
#include <vector>

#include "envs/foraging.hpp"
#include "envs/pursuit.hpp"
#include "learn/diff_reward.hpp"

namespace gpat {

struct TeammateSpec {
  std::string type;  // scripted | mixture | sfql (foraging),
                     // scripted_predator (pursuit)
  WeightVector preference;               // foraging object-type preference
  std::vector<WeightVector> preferences;  // mixture: per-episode choices
  std::vector<int> preferred_prey;       // pursuit prey preference
};

struct TeamSpec {
  std::string id;
  std::vector<TeammateSpec> teammates;
};

struct EnvConfig {
  std::string type = "foraging";  // foraging | pursuit
  int grid_size = 0;              // 0 -> environment default
  int objects_per_type = 5;
  int horizon = 0;  // 0 -> 50 for grids >= 8, 30 for reduced grids
  WeightVector team_weight;
  ObsEncoding obs_encoding = ObsEncoding::kFull;
  int n_predators = 3;
  int region_radius = 2;
};

struct TrainConfig {
  int64_t timesteps = 200000;
  double alpha = 0.1;
  double epsilon = 0.1;
  int64_t teammate_timesteps = 100000;  // sfql-trained teammates only
};

struct DRConfig {
  std::string branch = "linear";  // linear | general
  int episodes = 10;              // linear least-squares budget
  int td_episodes = 2500;         // general-branch TD evaluation budget
  double td_alpha = 0.05;
  CounterfactualMode counterfactual = CounterfactualMode::kResimulate;
};

struct EvalConfig {
  int episodes = 1000;
  int replicates = 10;
  int resamples = 1000;
  double ci_level = 0.95;
  int plastic_episodes = 100;
  std::string replicate_mode = "retrain";  // retrain | reseed
};

struct ExperimentConfig {
  EnvConfig env;
  double gamma = 0.95;
  uint64_t seed = 0;
  std::vector<TeamSpec> source_teams;
  TeamSpec target_team;
  TrainConfig train;
  DRConfig dr;
  EvalConfig eval;
  std::vector<std::string> methods;  // oracle gpat gpat_nodr robust plastic
  std::string output_dir = "out";
  bool reuse = false;

  std::string hash;  // content hash of the canonical form, set on load
  uint64_t base_seed() const;

  void validate() const;
  std::unique_ptr<Environment> make_env() const;
  std::vector<std::unique_ptr<Policy>> make_team(const TeamSpec& team,
                                                 uint64_t train_seed) const;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

}  // namespace gpat
