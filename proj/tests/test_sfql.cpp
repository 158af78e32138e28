#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "envs/foraging.hpp"
#include "learn/sfql.hpp"

using namespace gpat;

#include "tiny_instance.hpp"

using gpat::testing::TinyInstance;

TEST_CASE("hyperparameter validation; alpha may be exactly zero") {
  SFHyperparams hp;
  hp.alpha = -0.1;
  CHECK_THROWS_AS(hp.validate(), ConfigError);
  hp = SFHyperparams{};
  hp.epsilon = 1.5;
  CHECK_THROWS_AS(hp.validate(), ConfigError);
  hp = SFHyperparams{};
  hp.gamma = 1.0;
  CHECK_THROWS_AS(hp.validate(), ConfigError);
  hp = SFHyperparams{};
  hp.alpha = 0.0;
  CHECK_NOTHROW(hp.validate());
}

TEST_CASE("alpha zero leaves the table untouched") {
  ForagingConfig c;
  c.grid_size = 6;
  c.objects_per_type = 2;
  c.horizon = 20;
  ForagingEnv env(c);
  ScriptedForager mate({-1.0, -1.0, -1.0});
  SFHyperparams hp;
  hp.alpha = 0.0;
  hp.total_timesteps = 2000;
  Rng rng(5);
  auto res = sfql_train(env, {&mate}, {1, 1, 1}, hp, rng);
  CHECK(res.timesteps == 2000);
  for (const auto& [key, row] : res.sf.data())
    for (double v : row) CHECK(v == 0.0);
}

TEST_CASE("sf_update arithmetic on a single transition") {
  SFTable sf(2, 2, 0.5);
  // preload psi(next, a) so the bootstrap is non-trivial
  double* n0 = sf.row("next", 0);
  n0[0] = 1.0;
  n0[1] = 0.0;
  double* n1 = sf.row("next", 1);
  n1[0] = 0.0;
  n1[1] = 4.0;
  // w = (1, 1): greedy at "next" is action 1 (q=4 > q=1)
  sf_update(sf, "cur", 0, {2.0, 3.0}, "next", false, {1.0, 1.0}, 0.5);
  auto psi = sf.psi("cur", 0);
  // [DERIVED] 0 + 0.5 * (phi + 0.5 * psi(next,1) - 0):
  //   dim0: 0.5 * (2 + 0)   = 1.0
  //   dim1: 0.5 * (3 + 2)   = 2.5
  CHECK(psi[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(psi[1] == doctest::Approx(2.5).epsilon(1e-15));

  // terminal drops the bootstrap entirely
  SFTable sf2(2, 2, 0.5);
  sf2.row("next", 1)[1] = 100.0;
  sf_update(sf2, "cur", 0, {2.0, 3.0}, "next", true, {1.0, 1.0}, 0.5);
  auto psi2 = sf2.psi("cur", 0);
  CHECK(psi2[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(psi2[1] == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("converged psi . w matches value iteration within 1e-6") {
  TinyInstance inst;

  // --- independent oracle: scalar value iteration over the 64 states ---
  std::vector<double> V(64, 0.0);
  for (int sweep = 0; sweep < 4000; ++sweep) {
    double delta = 0.0;
    for (int flags = 1; flags < 4; ++flags) {
      for (int pos = 0; pos < 16; ++pos) {
        double best = -1e100;
        for (int a = 0; a < kGridActionCount; ++a) {
          auto n = inst.transition(pos, flags, a);
          double v = n.reward +
                     (n.terminal ? 0.0
                                 : inst.gamma * V[n.flags * 16 + n.pos]);
          best = std::max(best, v);
        }
        delta = std::max(delta, std::abs(best - V[flags * 16 + pos]));
        V[flags * 16 + pos] = best;
      }
    }
    if (delta < 1e-13) break;
  }

  // --- production update rule driven as exhaustive alpha=1 sweeps ---
  SFTable sf = inst.solve_sf(inst.w);

  double worst = 0.0;
  for (int flags = 1; flags < 4; ++flags) {
    for (int pos = 0; pos < 16; ++pos) {
      std::string key = inst.key(pos, flags);
      double q_best = sf.q_values(key, inst.w)[sf.greedy_action(key, inst.w)];
      worst = std::max(worst, std::abs(q_best - V[flags * 16 + pos]));
    }
  }
  CHECK(worst < 1e-6);
  CHECK(worst == worst);  // not NaN
}

TEST_CASE("scalar Q-learning stays in lockstep with psi . w") {
  // Drive identical transition streams through sf_update and a hand-rolled
  // scalar Q-learner; Q and psi . w must agree to 1e-9 at every step.
  ForagingConfig c;
  c.grid_size = 6;
  c.objects_per_type = 2;
  c.horizon = 25;
  ForagingEnv env(c);
  ScriptedForager mate({-0.5, 1.0, -0.5});
  WeightVector w = {1.0, 1.0, 1.0};
  const double alpha = 0.3, gamma = 0.95;

  SFTable sf(kGridActionCount, 3, gamma);
  std::map<std::string, std::vector<double>> q;  // scalar mirror
  auto q_row = [&](const std::string& key) -> std::vector<double>& {
    auto it = q.find(key);
    if (it == q.end())
      it = q.emplace(key, std::vector<double>(kGridActionCount, 0.0)).first;
    return it->second;
  };
  auto q_greedy = [&](const std::string& key) {
    auto& row = q_row(key);
    int best = 0;
    for (int a = 1; a < kGridActionCount; ++a)
      if (row[a] > row[best]) best = a;
    return best;
  };

  Rng rng(77);
  std::uniform_int_distribution<int> rand_action(0, kGridActionCount - 1);
  double worst = 0.0;
  int64_t steps = 0;
  while (steps < 20000) {
    env.reset(rng);
    while (!env.terminal() && steps < 20000) {
      std::string key = env.encode_observation(0);
      int a = rand_action(rng);
      JointAction ja = {a, mate.act(env, 1, rng)};
      auto out = env.step(ja, rng);
      std::string next_key = env.encode_observation(0);
      double r = dot(out.features, w);

      // scalar update first (reads only its own table)
      {
        double target = r;
        if (!out.terminal) target += gamma * q_row(next_key)[q_greedy(next_key)];
        auto& row = q_row(key);
        row[a] += alpha * (target - row[a]);
      }
      sf_update(sf, key, a, out.features, next_key, out.terminal, w, alpha);

      for (int b = 0; b < kGridActionCount; ++b)
        worst = std::max(worst, std::abs(sf.q(key, b, w) - q_row(key)[b]));
      ++steps;
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("greedy policy ties break to the lowest action index") {
  SFTable sf(3, 1, 0.9);
  sf.row("k", 0)[0] = 1.0;
  sf.row("k", 1)[0] = 1.0;  // tie with action 0
  sf.row("k", 2)[0] = 0.5;
  CHECK(sf.greedy_action("k", {1.0}) == 0);
  CHECK(sf.greedy_action("unseen", {1.0}) == 0);
}

TEST_CASE("training is reproducible per seed and respects the budget") {
  ForagingConfig c;
  c.grid_size = 6;
  c.objects_per_type = 2;
  c.horizon = 20;
  c.obs_encoding = ObsEncoding::kCompact;
  ScriptedForager mate({1.0, -0.5, -0.5});
  SFHyperparams hp;
  hp.total_timesteps = 5000;
  auto run = [&] {
    ForagingEnv env(c);
    Rng rng(31);
    return sfql_train(env, {&mate}, {1, 1, 1}, hp, rng);
  };
  auto a = run();
  auto b = run();
  CHECK(a.timesteps == 5000);
  CHECK(a.episodes == b.episodes);
  CHECK(a.sf.data() == b.sf.data());
  CHECK(a.sf.size() > 0);
}

TEST_CASE("robust training visits every roster") {
  ForagingConfig c;
  c.grid_size = 6;
  c.objects_per_type = 2;
  c.horizon = 20;
  c.obs_encoding = ObsEncoding::kCompact;
  ForagingEnv env(c);
  ScriptedForager m1({1.0, -0.5, -0.5});
  ScriptedForager m2({-0.5, 1.0, -0.5});
  std::vector<std::vector<Policy*>> teams = {{&m1}, {&m2}};
  SFHyperparams hp;
  hp.total_timesteps = 4000;
  Rng rng(9);
  std::vector<int64_t> per_team;
  auto res = sfql_train_multi(env, teams, {1, 1, 1}, hp, rng, &per_team);
  REQUIRE(per_team.size() == 2);
  CHECK(per_team[0] > 0);
  CHECK(per_team[1] > 0);
  CHECK(per_team[0] + per_team[1] == res.episodes);
}
