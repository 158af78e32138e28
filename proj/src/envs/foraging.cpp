#include "envs/foraging.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace gpat {

void ForagingConfig::validate() const {
  if (grid_size < 4) throw ConfigError("foraging: grid_size must be >= 4");
  if (objects_per_type < 1)
    throw ConfigError("foraging: objects_per_type must be >= 1");
  if (horizon <= 0) throw ConfigError("foraging: horizon must be positive");
  if (static_cast<int>(team_weight.size()) != kNumTypes)
    throw ConfigError("foraging: team_weight length must equal n_types");
  int half = grid_size / 2;
  if (objects_per_type > half * half)
    throw ConfigError("foraging: quadrant too small for objects_per_type");
}

ForagingEnv::ForagingEnv(ForagingConfig config) : config_(std::move(config)) {
  config_.validate();
  grid_.assign(config_.grid_size * config_.grid_size, -1);
}

void ForagingEnv::place_object(int row, int col, int type) {
  grid_[row * config_.grid_size + col] = static_cast<int8_t>(type);
}

std::vector<int> ForagingEnv::remaining_per_type() const {
  std::vector<int> counts(ForagingConfig::kNumTypes, 0);
  for (int8_t v : grid_)
    if (v >= 0) counts[v]++;
  return counts;
}

void ForagingEnv::reset(Rng& rng) {
  const int g = config_.grid_size;
  const int half = g / 2;
  std::fill(grid_.begin(), grid_.end(), -1);
  step_ = 0;

  // Quadrant origins: red upper-left, orange upper-right, yellow lower-right.
  const std::array<Cell, 3> origins = {Cell{0, 0}, Cell{0, half},
                                       Cell{half, half}};
  const int qh = g - half;  // quadrant extent (rows from half to g)
  for (int type = 0; type < ForagingConfig::kNumTypes; ++type) {
    int rows = (type == 2) ? qh : half;
    int cols = (type == 0) ? half : (g - half);
    if (type == 1) rows = half;
    std::vector<int> cells(rows * cols);
    for (size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<int>(i);
    // partial Fisher-Yates draw without replacement
    for (int k = 0; k < config_.objects_per_type; ++k) {
      std::uniform_int_distribution<int> pick(k,
                                              static_cast<int>(cells.size()) - 1);
      std::swap(cells[k], cells[pick(rng)]);
      int r = origins[type].row + cells[k] / cols;
      int c = origins[type].col + cells[k] % cols;
      place_object(r, c, type);
    }
  }

  // Agents spawn on distinct cells in the lower-left quadrant.
  std::vector<int> spawn(qh * half);
  for (size_t i = 0; i < spawn.size(); ++i) spawn[i] = static_cast<int>(i);
  for (int a = 0; a < 2; ++a) {
    std::uniform_int_distribution<int> pick(a,
                                            static_cast<int>(spawn.size()) - 1);
    std::swap(spawn[a], spawn[pick(rng)]);
    agents_[a] = Cell{half + spawn[a] / half, spawn[a] % half};
  }
}

bool ForagingEnv::terminal() const {
  if (step_ >= config_.horizon) return true;
  for (int8_t v : grid_)
    if (v >= 0) return false;
  return true;
}

Cell ForagingEnv::moved(Cell from, int action) const {
  Cell to = from;
  switch (action) {
    case kUp: to.row--; break;
    case kDown: to.row++; break;
    case kLeft: to.col--; break;
    case kRight: to.col++; break;
    case kStay: break;
    default: throw ConfigError("foraging: action index out of range");
  }
  if (to.row < 0 || to.row >= config_.grid_size || to.col < 0 ||
      to.col >= config_.grid_size)
    return from;  // off-grid resolves to stay
  return to;
}

StepOutcome ForagingEnv::step(const JointAction& action, Rng&) {
  if (terminal()) throw InvariantError("foraging: step on terminal state");
  if (action.size() != 2) throw ConfigError("foraging: need 2 actions");

  for (int a = 0; a < 2; ++a) agents_[a] = moved(agents_[a], action[a]);

  StepOutcome out;
  out.features.assign(ForagingConfig::kNumTypes, 0.0);
  out.agent_features.assign(2, FeatureVector(ForagingConfig::kNumTypes, 0.0));
  // Collection in agent-index order; a co-occupied object counts once and is
  // credited to the lower-index agent.
  for (int a = 0; a < 2; ++a) {
    int idx = agents_[a].row * config_.grid_size + agents_[a].col;
    int type = grid_[idx];
    if (type >= 0) {
      grid_[idx] = -1;
      out.features[type] += 1.0;
      out.agent_features[a][type] += 1.0;
    }
  }
  step_++;
  out.reward = dot(out.features, config_.team_weight);
  out.terminal = terminal();
  return out;
}

std::string ForagingEnv::encode_observation(int agent) const {
  return config_.obs_encoding == ObsEncoding::kFull ? encode_full(agent)
                                                    : encode_compact(agent);
}

ForagingObservation ForagingEnv::observe(int agent) const {
  const int g = config_.grid_size;
  ForagingObservation obs;
  obs.grid_size = g;
  for (auto& ch : obs.channels) ch.assign(g * g, 0);
  const Cell me = agents_[agent];
  for (int r = 0; r < g; ++r) {
    for (int c = 0; c < g; ++c) {
      int type = grid_[r * g + c];
      if (type < 0) continue;
      int sr = ((r - me.row) % g + g) % g;
      int sc = ((c - me.col) % g + g) % g;
      obs.channels[type][sr * g + sc] = 1;
    }
  }
  const Cell mate = agents_[1 - agent];
  int sr = ((mate.row - me.row) % g + g) % g;
  int sc = ((mate.col - me.col) % g + g) % g;
  obs.channels[3][sr * g + sc] = 1;
  // channel 4 (walls) stays all-zero on the open grid
  return obs;
}

std::string ForagingEnv::encode_full(int agent) const {
  ForagingObservation obs = observe(agent);
  const int g = config_.grid_size;
  std::string key(g * g, '\0');
  for (int i = 0; i < g * g; ++i) {
    uint8_t b = 0;
    for (int ch = 0; ch < ForagingObservation::kChannels; ++ch)
      if (obs.channels[ch][i]) b |= static_cast<uint8_t>(1u << ch);
    key[i] = static_cast<char>(b);
  }
  return key;
}

// Compact abstraction for tabular learners: one byte per object type giving
// the direction (3x3 sign bucket) and a coarse distance band of the nearest
// remaining object of that type, 0 when the type is exhausted.
std::string ForagingEnv::encode_compact(int agent) const {
  const int g = config_.grid_size;
  const Cell me = agents_[agent];
  std::string key(ForagingConfig::kNumTypes, '\0');
  for (int type = 0; type < ForagingConfig::kNumTypes; ++type) {
    int best = -1;
    Cell best_cell{};
    for (int r = 0; r < g; ++r) {
      for (int c = 0; c < g; ++c) {
        if (grid_[r * g + c] != type) continue;
        int d = std::abs(r - me.row) + std::abs(c - me.col);
        if (best < 0 || d < best) {
          best = d;
          best_cell = {r, c};
        }
      }
    }
    if (best < 0) {
      key[type] = 0;
      continue;
    }
    int dr = best_cell.row - me.row;
    int dc = best_cell.col - me.col;
    int dir = ((dr > 0) - (dr < 0) + 1) * 3 + ((dc > 0) - (dc < 0) + 1);
    key[type] = static_cast<char>(1 + dir);
  }
  return key;
}

std::unique_ptr<Environment> ForagingEnv::clone() const {
  return std::make_unique<ForagingEnv>(*this);
}

std::string ForagingEnv::render_ascii() const {
  const int g = config_.grid_size;
  std::ostringstream out;
  for (int r = 0; r < g; ++r) {
    for (int c = 0; c < g; ++c) {
      char ch = '.';
      int type = grid_[r * g + c];
      if (type == 0) ch = 'R';
      if (type == 1) ch = 'O';
      if (type == 2) ch = 'Y';
      if (agents_[1] == Cell{r, c}) ch = 'T';
      if (agents_[0] == Cell{r, c}) ch = 'L';
      out << ch;
    }
    out << '\n';
  }
  return out.str();
}

ScriptedForager::ScriptedForager(WeightVector preference)
    : preference_(std::move(preference)) {
  if (static_cast<int>(preference_.size()) != ForagingConfig::kNumTypes)
    throw ConfigError("scripted forager: preference length must be n_types");
}

int ScriptedForager::act(const Environment& env, int agent_index, Rng&) {
  const auto& fenv = dynamic_cast<const ForagingEnv&>(env);
  const int g = fenv.config().grid_size;
  const Cell me = fenv.agent_position(agent_index);

  int best_d = -1;
  Cell target{};
  for (int r = 0; r < g; ++r) {
    for (int c = 0; c < g; ++c) {
      int type = fenv.object_at(r, c);
      if (type < 0 || preference_[type] <= 0.0) continue;
      int d = std::abs(r - me.row) + std::abs(c - me.col);
      if (best_d < 0 || d < best_d) {  // scan order gives (row, col) tie-break
        best_d = d;
        target = {r, c};
      }
    }
  }
  if (best_d < 0) return kStay;
  if (target.row < me.row) return kUp;
  if (target.row > me.row) return kDown;
  if (target.col < me.col) return kLeft;
  if (target.col > me.col) return kRight;
  return kStay;
}

MixtureForager::MixtureForager(std::vector<WeightVector> preferences) {
  if (preferences.empty())
    throw ConfigError("mixture forager: needs at least one preference");
  for (auto& p : preferences) modes_.emplace_back(std::move(p));
}

int MixtureForager::act(const Environment& env, int agent_index, Rng& rng) {
  // A step counter that did not advance monotonically means a fresh episode.
  if (env.step_count() <= last_step_ || last_step_ < 0) {
    std::uniform_int_distribution<size_t> pick(0, modes_.size() - 1);
    current_ = pick(rng);
  }
  last_step_ = env.step_count();
  return modes_[current_].act(env, agent_index, rng);
}

}  // namespace gpat
