#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpat {

using FeatureVector = std::vector<double>;
using WeightVector = std::vector<double>;

// One discrete action index per agent, in agent order.
using JointAction = std::vector<int>;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingArtifactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double dot(const FeatureVector& a, const WeightVector& b) {
  if (a.size() != b.size()) throw InvariantError("dot: dimension mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Transition {
  std::string obs;        // learner observation encoding at s
  JointAction action;     // joint action taken
  double reward = 0.0;    // team reward
  FeatureVector features; // phi(s, a, s')
  std::string next_obs;   // learner observation encoding at s'
  bool terminal = false;
  // Per-agent collection/capture attribution; outer index = agent.
  std::vector<FeatureVector> agent_features;
  // Set by GPI execution; -1 when not applicable.
  int chosen_library_index = -1;
};

struct EpisodeLog {
  std::vector<Transition> transitions;
  uint64_t seed = 0;
  std::string team_id;

  size_t size() const { return transitions.size(); }

  std::string to_record_stream() const;  // line-delimited, schema "v1"
};

double discounted_return(const EpisodeLog& log, double gamma);

// splitmix64; used to derive independent seeds from (base, index...) tuples.
uint64_t mix_seed(uint64_t a, uint64_t b);

}  // namespace gpat
