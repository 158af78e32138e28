#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "envs/foraging.hpp"

using namespace gpat;

namespace {

ForagingEnv make_env(int grid = 8, int per_type = 5,
                     ObsEncoding enc = ObsEncoding::kFull) {
  ForagingConfig c;
  c.grid_size = grid;
  c.objects_per_type = per_type;
  c.horizon = 50;
  c.obs_encoding = enc;
  return ForagingEnv(c);
}

// Cleared board with the agents parked away from the action.
ForagingEnv blank_env(ObsEncoding enc = ObsEncoding::kFull) {
  auto env = make_env(8, 5, enc);
  Rng rng(1);
  env.reset(rng);
  env.clear_objects();
  env.set_agent_position(0, {7, 0});
  env.set_agent_position(1, {7, 7});
  return env;
}

}  // namespace

TEST_CASE("reset places objects in their quadrants and agents lower-left") {
  auto env = make_env();
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    env.reset(rng);
    auto counts = env.remaining_per_type();
    CHECK(counts == std::vector<int>{5, 5, 5});
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) {
        int type = env.object_at(r, c);
        if (type < 0) continue;
        if (type == 0) {  // red upper-left
          CHECK(r < 4);
          CHECK(c < 4);
        } else if (type == 1) {  // orange upper-right
          CHECK(r < 4);
          CHECK(c >= 4);
        } else {  // yellow lower-right
          CHECK(r >= 4);
          CHECK(c >= 4);
        }
      }
    }
    auto a0 = env.agent_position(0);
    auto a1 = env.agent_position(1);
    CHECK(a0.row >= 4);
    CHECK(a0.col < 4);
    CHECK(a1.row >= 4);
    CHECK(a1.col < 4);
    CHECK_FALSE(a0 == a1);
    CHECK(env.step_count() == 0);
    CHECK_FALSE(env.terminal());
  }
}

TEST_CASE("off-grid moves resolve to stay") {
  auto env = blank_env();
  env.place_object(0, 0, 0);  // keep non-terminal
  env.set_agent_position(0, {7, 0});
  env.set_agent_position(1, {7, 7});
  Rng rng(0);
  env.step({kDown, kRight}, rng);  // both would leave the grid
  CHECK(env.agent_position(0) == Cell{7, 0});
  CHECK(env.agent_position(1) == Cell{7, 7});
}

TEST_CASE("collection emits per-type features and team reward") {
  auto env = blank_env();
  env.place_object(6, 0, 2);  // yellow below agent 0's neighbor cell
  env.place_object(6, 7, 1);  // orange above agent 1
  env.set_agent_position(0, {7, 0});
  env.set_agent_position(1, {7, 7});
  Rng rng(0);
  auto out = env.step({kUp, kUp}, rng);
  CHECK(out.features == FeatureVector{0, 1, 1});
  // [DERIVED] reward = phi . [1,1,1] = 2
  CHECK(out.reward == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(out.agent_features[0] == FeatureVector{0, 0, 1});
  CHECK(out.agent_features[1] == FeatureVector{0, 1, 0});
  CHECK(out.terminal);  // board now empty
  CHECK(env.terminal());
}

TEST_CASE("co-collection counts once, credited to the lower agent index") {
  auto env = blank_env();
  env.place_object(6, 3, 0);
  env.set_agent_position(0, {5, 3});  // arrives from above
  env.set_agent_position(1, {7, 3});  // arrives from below
  Rng rng(0);
  auto out = env.step({kDown, kUp}, rng);
  CHECK(out.features == FeatureVector{1, 0, 0});
  CHECK(out.reward == doctest::Approx(1.0));
  CHECK(out.agent_features[0] == FeatureVector{1, 0, 0});
  CHECK(out.agent_features[1] == FeatureVector{0, 0, 0});
}

TEST_CASE("horizon terminates the episode") {
  auto env = blank_env();
  env.place_object(0, 7, 0);  // unreachable-ish; agents will idle
  Rng rng(0);
  for (int t = 0; t < 50; ++t) {
    CHECK_FALSE(env.terminal());
    env.step({kStay, kStay}, rng);
  }
  CHECK(env.terminal());
  CHECK_THROWS_AS(env.step({kStay, kStay}, rng), InvariantError);
}

TEST_CASE("full observation is agent-centric and toroidal") {
  auto env = blank_env();
  env.place_object(2, 3, 1);
  env.set_agent_position(0, {4, 4});
  env.set_agent_position(1, {4, 5});
  auto obs = env.observe(0);
  // object at (2,3) relative to (4,4): ((2-4)%8, (3-4)%8) = (6, 7)
  CHECK(obs.channels[1][6 * 8 + 7] == 1);
  // teammate at relative (0, 1)
  CHECK(obs.channels[3][0 * 8 + 1] == 1);
  int walls = 0;
  for (auto v : obs.channels[4]) walls += v;
  CHECK(walls == 0);

  auto key = env.encode_observation(0);
  CHECK(key.size() == 64);
  // [DERIVED] byte = bit1 (orange) at flat index 6*8+7
  CHECK(static_cast<uint8_t>(key[6 * 8 + 7]) == 0x02);
  CHECK(static_cast<uint8_t>(key[0 * 8 + 1]) == 0x08);
}

TEST_CASE("compact encoding buckets nearest object by direction") {
  auto env = blank_env(ObsEncoding::kCompact);
  env.set_agent_position(0, {4, 4});
  env.place_object(2, 6, 0);   // dr=-2, dc=+2 -> sign bucket (0,2) -> dir 2
  env.place_object(4, 5, 1);   // dr=0, dc=+1  -> sign bucket (1,2) -> dir 5
  auto key = env.encode_observation(0);
  REQUIRE(key.size() == 3);
  // [DERIVED] byte = 1 + dir, dir = (sign(dr)+1)*3 + (sign(dc)+1)
  CHECK(static_cast<uint8_t>(key[0]) == 1 + 2);
  CHECK(static_cast<uint8_t>(key[1]) == 1 + 5);
  CHECK(static_cast<uint8_t>(key[2]) == 0);  // exhausted type

  // nearest object (Manhattan) decides the bucket when several remain
  env.place_object(4, 3, 0);  // d=1 beats d=4 -> dir (1,0)=3
  CHECK(static_cast<uint8_t>(env.encode_observation(0)[0]) == 1 + 3);
}

TEST_CASE("clone detaches state") {
  auto env = make_env();
  Rng rng(3);
  env.reset(rng);
  auto copy = env.clone();
  Rng rng2(4);
  env.step({kUp, kUp}, rng2);
  CHECK(copy->step_count() == 0);
  CHECK(env.step_count() == 1);
  CHECK(copy->encode_observation(0) != env.encode_observation(0));
}

TEST_CASE("scripted forager walks to the nearest preferred object") {
  auto env = blank_env();
  env.set_agent_position(1, {7, 7});
  env.set_agent_position(0, {4, 4});
  env.place_object(2, 4, 0);  // red, d=2
  env.place_object(4, 1, 2);  // yellow, d=3
  Rng rng(0);

  ScriptedForager red_lover({1.0, -0.5, -0.5});
  CHECK(red_lover.act(env, 0, rng) == kUp);  // toward (2,4)

  ScriptedForager yellow_lover({-0.5, -0.5, 1.0});
  CHECK(yellow_lover.act(env, 0, rng) == kLeft);  // toward (4,1)

  ScriptedForager nothing({-1.0, -1.0, -1.0});
  CHECK(nothing.act(env, 0, rng) == kStay);

  // vertical-first when both moves close distance
  env.clear_objects();
  env.place_object(6, 6, 0);
  CHECK(red_lover.act(env, 0, rng) == kDown);
}

TEST_CASE("scripted forager ties break by row-major scan order") {
  auto env = blank_env();
  env.set_agent_position(0, {4, 4});
  env.set_agent_position(1, {7, 7});
  env.place_object(3, 4, 0);  // d=1, above
  env.place_object(4, 3, 0);  // d=1, left; scanned later
  Rng rng(0);
  ScriptedForager red_lover({1.0, 0.0, 0.0});
  CHECK(red_lover.act(env, 0, rng) == kUp);
}

TEST_CASE("config validation") {
  ForagingConfig c;
  c.grid_size = 3;
  CHECK_THROWS_AS(ForagingEnv{c}, ConfigError);
  c = ForagingConfig{};
  c.objects_per_type = 17;  // 4x4 quadrant only holds 16
  CHECK_THROWS_AS(ForagingEnv{c}, ConfigError);
  c = ForagingConfig{};
  c.team_weight = {1.0, 1.0};
  CHECK_THROWS_AS(ForagingEnv{c}, ConfigError);
}
