#pragma once

// Deterministic 4x4 two-object foraging instance with a parked teammate,
// shared by the exactness tests. The MDP state is (learner cell,
// alive-object flags): 16 * 4 = 64 states, and the full observation encoding
// is injective over them, so tables over observation keys are tables over
// states.

#include "envs/foraging.hpp"
#include "learn/sfql.hpp"

namespace gpat::testing {

struct TinyInstance {
  ForagingConfig config;
  Cell mate{2, 2};
  Cell obj0{0, 1};  // red
  Cell obj1{3, 3};  // yellow
  WeightVector w{1.0, 1.0, 1.0};
  double gamma = 0.95;

  TinyInstance() {
    config.grid_size = 4;
    config.objects_per_type = 1;
    config.horizon = 1000;  // never binds during one-step backups
  }

  ForagingEnv make(int pos, int flags) const {
    ForagingEnv env(config);
    Rng rng(0);
    env.reset(rng);
    env.clear_objects();
    if (flags & 1) env.place_object(obj0.row, obj0.col, 0);
    if (flags & 2) env.place_object(obj1.row, obj1.col, 2);
    env.set_agent_position(0, {pos / 4, pos % 4});
    env.set_agent_position(1, mate);
    return env;
  }

  struct Next {
    FeatureVector phi;
    double reward = 0.0;
    int pos = 0;
    int flags = 0;
    bool terminal = false;
    std::string next_key;
  };

  Next transition(int pos, int flags, int action) const {
    ForagingEnv env = make(pos, flags);
    Rng rng(0);  // unused: dynamics are deterministic
    auto out = env.step({action, kStay}, rng);
    Next n;
    n.phi = out.features;
    n.reward = dot(out.features, w);
    Cell c = env.agent_position(0);
    n.pos = c.row * 4 + c.col;
    n.flags = (env.object_at(obj0.row, obj0.col) == 0 ? 1 : 0) |
              (env.object_at(obj1.row, obj1.col) == 2 ? 2 : 0);
    n.terminal = out.terminal;
    n.next_key = env.encode_observation(0);
    return n;
  }

  std::string key(int pos, int flags) const {
    return make(pos, flags).encode_observation(0);
  }

  // Exact successor features of the greedy policy for `policy_w`, obtained by
  // alpha=1 Gauss-Seidel sweeps of the production update rule.
  SFTable solve_sf(const WeightVector& policy_w) const {
    SFTable sf(kGridActionCount, 3, gamma);
    for (int sweep = 0; sweep < 4000; ++sweep) {
      double delta = 0.0;
      for (int flags = 1; flags < 4; ++flags) {
        for (int pos = 0; pos < 16; ++pos) {
          std::string k = key(pos, flags);
          for (int a = 0; a < kGridActionCount; ++a) {
            auto n = transition(pos, flags, a);
            auto before = sf.psi(k, a);
            sf_update(sf, k, a, n.phi, n.next_key, n.terminal, policy_w, 1.0);
            auto after = sf.psi(k, a);
            for (int i = 0; i < 3; ++i)
              delta = std::max(delta, std::abs(after[i] - before[i]));
          }
        }
      }
      if (delta < 1e-13) break;
    }
    return sf;
  }
};

}  // namespace gpat::testing
