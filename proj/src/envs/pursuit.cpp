#include "envs/pursuit.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace gpat {

void PursuitConfig::finalize() {
  if (grid_size < 5) throw ConfigError("pursuit: grid_size must be >= 5");
  if (n_predators < 1) throw ConfigError("pursuit: need at least one predator");
  if (horizon <= 0) throw ConfigError("pursuit: horizon must be positive");
  const int g = grid_size;
  if (prey.empty()) {
    // Default layout: easy prey top-left and bottom-right corners, hard prey
    // top-right and bottom-left, each with a box region around its spawn.
    auto make = [&](PreyKind kind, int r, int c) {
      PreySpec p;
      p.kind = kind;
      p.spawn = {r, c};
      p.row_min = std::max(0, r - region_radius);
      p.row_max = std::min(g - 1, r + region_radius);
      p.col_min = std::max(0, c - region_radius);
      p.col_max = std::min(g - 1, c + region_radius);
      return p;
    };
    prey.push_back(make(PreyKind::kEasy, 1, 1));
    prey.push_back(make(PreyKind::kHard, 1, g - 2));
    prey.push_back(make(PreyKind::kHard, g - 2, 1));
    prey.push_back(make(PreyKind::kEasy, g - 2, g - 2));
  }
  for (const auto& p : prey) {
    if (p.row_min > p.row_max || p.col_min > p.col_max || p.row_min < 0 ||
        p.row_max >= g || p.col_min < 0 || p.col_max >= g)
      throw ConfigError("pursuit: prey region outside grid");
    if (p.spawn.row < p.row_min || p.spawn.row > p.row_max ||
        p.spawn.col < p.col_min || p.spawn.col > p.col_max)
      throw ConfigError("pursuit: prey spawn outside its region");
  }
  if (team_weight.empty()) team_weight.assign(prey.size(), 1.0);
  if (team_weight.size() != prey.size())
    throw ConfigError("pursuit: team_weight length must equal prey count");
}

PursuitEnv::PursuitEnv(PursuitConfig config) : config_(std::move(config)) {
  config_.finalize();
  predators_.resize(config_.n_predators);
  prey_pos_.resize(config_.prey.size());
  alive_.assign(config_.prey.size(), 1);
}

void PursuitEnv::reset(Rng&) {
  const int g = config_.grid_size;
  // Deterministic spawns; episode stochasticity comes from prey movement.
  for (int i = 0; i < config_.n_predators; ++i) {
    int c = 1 + i * std::max(1, (g - 2) / std::max(1, config_.n_predators - 1));
    predators_[i] = {g / 2, std::min(c, g - 2)};
  }
  for (size_t i = 0; i < config_.prey.size(); ++i) {
    prey_pos_[i] = config_.prey[i].spawn;
    alive_[i] = 1;
  }
  step_ = 0;
}

bool PursuitEnv::terminal() const {
  if (step_ >= config_.horizon) return true;
  return std::find(alive_.begin(), alive_.end(), 1) == alive_.end();
}

Cell PursuitEnv::moved(Cell from, int action) const {
  Cell to = from;
  switch (action) {
    case kUp: to.row--; break;
    case kDown: to.row++; break;
    case kLeft: to.col--; break;
    case kRight: to.col++; break;
    case kStay: break;
    default: throw ConfigError("pursuit: action index out of range");
  }
  if (to.row < 0 || to.row >= config_.grid_size || to.col < 0 ||
      to.col >= config_.grid_size)
    return from;
  return to;
}

StepOutcome PursuitEnv::step(const JointAction& action, Rng& rng) {
  if (terminal()) throw InvariantError("pursuit: step on terminal state");
  if (static_cast<int>(action.size()) != config_.n_predators)
    throw ConfigError("pursuit: joint action size mismatch");

  for (int i = 0; i < config_.n_predators; ++i)
    predators_[i] = moved(predators_[i], action[i]);

  StepOutcome out;
  out.features.assign(config_.prey.size(), 0.0);
  out.agent_features.assign(config_.n_predators,
                            FeatureVector(config_.prey.size(), 0.0));
  for (size_t p = 0; p < config_.prey.size(); ++p) {
    if (!alive_[p]) continue;
    int on_cell = 0, near = 0, credit = -1;
    for (int i = 0; i < config_.n_predators; ++i) {
      int d = std::abs(predators_[i].row - prey_pos_[p].row) +
              std::abs(predators_[i].col - prey_pos_[p].col);
      if (d == 0) on_cell++;
      if (d <= 1) {
        near++;
        if (credit < 0) credit = i;
      }
    }
    bool captured = config_.prey[p].kind == PreyKind::kEasy ? on_cell >= 1
                                                            : near >= 2;
    if (captured) {
      alive_[p] = 0;
      out.features[p] = 1.0;
      if (config_.prey[p].kind == PreyKind::kEasy) {
        for (int i = 0; i < config_.n_predators; ++i)
          if (predators_[i] == prey_pos_[p]) {
            out.agent_features[i][p] = 1.0;
            break;
          }
      } else {
        out.agent_features[credit][p] = 1.0;
      }
    }
  }

  // Surviving prey random-walk within their regions (including stay).
  for (size_t p = 0; p < config_.prey.size(); ++p) {
    if (!alive_[p]) continue;
    std::uniform_int_distribution<int> pick(0, kGridActionCount - 1);
    Cell to = moved(prey_pos_[p], pick(rng));
    const auto& spec = config_.prey[p];
    if (to.row >= spec.row_min && to.row <= spec.row_max &&
        to.col >= spec.col_min && to.col <= spec.col_max)
      prey_pos_[p] = to;
  }

  step_++;
  out.reward = dot(out.features, config_.team_weight);
  out.terminal = terminal();
  return out;
}

std::string PursuitEnv::encode_observation(int agent) const {
  return config_.obs_encoding == ObsEncoding::kFull ? encode_full(agent)
                                                    : encode_compact(agent);
}

// Full encoding: agent-centric toroidal channels packed one byte per cell
// (bit 0 easy prey, bit 1 hard prey, bit 2 other predators).
std::string PursuitEnv::encode_full(int agent) const {
  const int g = config_.grid_size;
  std::string key(g * g, '\0');
  const Cell me = predators_[agent];
  auto put = [&](Cell c, uint8_t bit) {
    int sr = ((c.row - me.row) % g + g) % g;
    int sc = ((c.col - me.col) % g + g) % g;
    key[sr * g + sc] = static_cast<char>(key[sr * g + sc] | bit);
  };
  for (size_t p = 0; p < config_.prey.size(); ++p)
    if (alive_[p])
      put(prey_pos_[p], config_.prey[p].kind == PreyKind::kEasy ? 1 : 2);
  for (int i = 0; i < config_.n_predators; ++i)
    if (i != agent) put(predators_[i], 4);
  return key;
}

// Compact abstraction for tabular learners: per prey a direction/distance
// byte (0 when captured), then for each hard prey the number of *other*
// predators within Chebyshev distance 1 of it (capped at 2).
std::string PursuitEnv::encode_compact(int agent) const {
  const Cell me = predators_[agent];
  std::string key;
  key.reserve(config_.prey.size() + 2);
  for (size_t p = 0; p < config_.prey.size(); ++p) {
    if (!alive_[p]) {
      key.push_back(0);
      continue;
    }
    int dr = prey_pos_[p].row - me.row;
    int dc = prey_pos_[p].col - me.col;
    int dir = ((dr > 0) - (dr < 0) + 1) * 3 + ((dc > 0) - (dc < 0) + 1);
    int far = (std::abs(dr) + std::abs(dc)) >= 4 ? 1 : 0;
    key.push_back(static_cast<char>(1 + dir * 2 + far));
  }
  for (size_t p = 0; p < config_.prey.size(); ++p) {
    if (config_.prey[p].kind != PreyKind::kHard) continue;
    int helpers = 0;
    if (alive_[p]) {
      for (int i = 0; i < config_.n_predators; ++i) {
        if (i == agent) continue;
        if (std::max(std::abs(predators_[i].row - prey_pos_[p].row),
                     std::abs(predators_[i].col - prey_pos_[p].col)) <= 1)
          helpers++;
      }
    }
    key.push_back(static_cast<char>(std::min(helpers, 2)));
  }
  return key;
}

std::unique_ptr<Environment> PursuitEnv::clone() const {
  return std::make_unique<PursuitEnv>(*this);
}

std::string PursuitEnv::render_ascii() const {
  const int g = config_.grid_size;
  std::string grid(g * g, '.');
  for (size_t p = 0; p < config_.prey.size(); ++p)
    if (alive_[p])
      grid[prey_pos_[p].row * g + prey_pos_[p].col] =
          config_.prey[p].kind == PreyKind::kEasy ? 'e' : 'h';
  for (int i = 0; i < config_.n_predators; ++i)
    grid[predators_[i].row * g + predators_[i].col] = i == 0 ? 'L' : 'P';
  std::ostringstream out;
  for (int r = 0; r < g; ++r) out << grid.substr(r * g, g) << '\n';
  return out.str();
}

ScriptedPredator::ScriptedPredator(std::vector<int> preferred_prey)
    : preferred_(std::move(preferred_prey)) {}

int ScriptedPredator::act(const Environment& env, int agent_index, Rng&) {
  const auto& penv = dynamic_cast<const PursuitEnv&>(env);
  const Cell me = penv.predator_position(agent_index);
  int best_d = -1;
  Cell target{};
  for (int p : preferred_) {
    if (!penv.prey_alive(p)) continue;
    int d = std::abs(penv.prey_position(p).row - me.row) +
            std::abs(penv.prey_position(p).col - me.col);
    if (best_d < 0 || d < best_d) {
      best_d = d;
      target = penv.prey_position(p);
    }
  }
  if (best_d < 0) return kStay;
  if (target.row < me.row) return kUp;
  if (target.row > me.row) return kDown;
  if (target.col < me.col) return kLeft;
  if (target.col > me.col) return kRight;
  return kStay;
}

}  // namespace gpat
