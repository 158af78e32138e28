#include "exp/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "envs/foraging.hpp"
#include "envs/pursuit.hpp"

namespace gpat {

namespace {

std::vector<Cell> agent_positions(const Environment& env) {
  std::vector<Cell> cells;
  if (auto* f = dynamic_cast<const ForagingEnv*>(&env)) {
    cells.push_back(f->agent_position(0));
    cells.push_back(f->agent_position(1));
  } else if (auto* p = dynamic_cast<const PursuitEnv*>(&env)) {
    for (int i = 0; i < p->num_agents(); ++i)
      cells.push_back(p->predator_position(i));
  }
  return cells;
}

int grid_size_of(const Environment& env) {
  if (auto* f = dynamic_cast<const ForagingEnv*>(&env))
    return f->config().grid_size;
  if (auto* p = dynamic_cast<const PursuitEnv*>(&env))
    return p->config().grid_size;
  return 0;
}

void run_episode(Environment& env, Policy& learner,
                 const std::vector<Policy*>& teammates, Rng& rng,
                 std::vector<std::string>* frames,
                 std::vector<std::vector<Cell>>* paths) {
  env.reset(rng);
  if (frames) frames->push_back(env.render_ascii());
  if (paths) paths->push_back(agent_positions(env));
  for (int t = 0; t < env.horizon() && !env.terminal(); ++t) {
    JointAction action(env.num_agents());
    action[kLearnerSlot] = learner.act(env, kLearnerSlot, rng);
    for (size_t i = 0; i < teammates.size(); ++i)
      action[i + 1] = teammates[i]->act(env, static_cast<int>(i) + 1, rng);
    env.step(action, rng);
    if (frames) frames->push_back(env.render_ascii());
    if (paths) paths->push_back(agent_positions(env));
  }
}

}  // namespace

std::string render_episode_ascii(Environment& env, Policy& learner,
                                 const std::vector<Policy*>& teammates,
                                 Rng& rng) {
  std::vector<std::string> frames;
  run_episode(env, learner, teammates, rng, &frames, nullptr);
  std::ostringstream out;
  for (size_t t = 0; t < frames.size(); ++t)
    out << "step " << t << "\n" << frames[t] << "\n";
  return out.str();
}

std::string render_episode_svg(Environment& env, Policy& learner,
                               const std::vector<Policy*>& teammates,
                               Rng& rng) {
  constexpr int kCellPx = 40;
  std::vector<std::vector<Cell>> steps;

  // Capture the initial board before the walk consumes it.
  auto initial = env.clone();
  run_episode(env, learner, teammates, rng, nullptr, &steps);

  const int g = grid_size_of(*initial);
  const int size = g * kCellPx;
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << size
      << "' height='" << size << "'>\n";
  svg << "<rect width='" << size << "' height='" << size
      << "' fill='white' stroke='black'/>\n";
  for (int i = 1; i < g; ++i) {
    svg << "<line x1='" << i * kCellPx << "' y1='0' x2='" << i * kCellPx
        << "' y2='" << size << "' stroke='#ddd'/>\n";
    svg << "<line x1='0' y1='" << i * kCellPx << "' x2='" << size << "' y2='"
        << i * kCellPx << "' stroke='#ddd'/>\n";
  }

  auto cx = [&](const Cell& c) { return c.col * kCellPx + kCellPx / 2; };
  auto cy = [&](const Cell& c) { return c.row * kCellPx + kCellPx / 2; };

  if (auto* f = dynamic_cast<const ForagingEnv*>(initial.get())) {
    static const char* colors[3] = {"red", "orange", "gold"};
    for (int r = 0; r < g; ++r)
      for (int c = 0; c < g; ++c)
        if (int t = f->object_at(r, c); t >= 0)
          svg << "<circle cx='" << cx({r, c}) << "' cy='" << cy({r, c})
              << "' r='" << kCellPx / 4 << "' fill='" << colors[t] << "'/>\n";
  } else if (auto* p = dynamic_cast<const PursuitEnv*>(initial.get())) {
    for (size_t i = 0; i < p->config().prey.size(); ++i)
      svg << "<circle cx='" << cx(p->prey_position(static_cast<int>(i)))
          << "' cy='" << cy(p->prey_position(static_cast<int>(i))) << "' r='"
          << kCellPx / 4 << "' fill='"
          << (p->config().prey[i].kind == PreyKind::kEasy ? "gold" : "red")
          << "'/>\n";
  }

  const size_t n_agents = steps.empty() ? 0 : steps[0].size();
  for (size_t a = 0; a < n_agents; ++a) {
    svg << "<polyline fill='none' stroke='"
        << (a == 0 ? "green" : "purple") << "' stroke-width='3' points='";
    for (const auto& frame : steps) svg << cx(frame[a]) << "," << cy(frame[a])
                                        << " ";
    svg << "'/>\n";
    svg << "<circle cx='" << cx(steps.front()[a]) << "' cy='"
        << cy(steps.front()[a]) << "' r='6' fill='"
        << (a == 0 ? "green" : "purple") << "'/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string value_map_csv(const std::vector<std::vector<double>>& map) {
  std::ostringstream out;
  for (const auto& row : map) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out << ",";
      if (std::isnan(row[c]))
        out << "nan";
      else
        out << row[c];
    }
    out << "\n";
  }
  return out.str();
}

std::string value_map_svg(const std::vector<std::vector<double>>& map) {
  constexpr int kCellPx = 40;
  const int g = static_cast<int>(map.size());
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << g * kCellPx
      << "' height='" << g * kCellPx << "'>\n";
  for (int r = 0; r < g; ++r) {
    for (int c = 0; c < static_cast<int>(map[r].size()); ++c) {
      double v = map[r][c];
      std::string fill = "gray";
      if (!std::isnan(v)) {
        int heat = static_cast<int>(255.0 * std::clamp(v, 0.0, 1.0));
        std::ostringstream color;
        color << "rgb(" << heat << ",0," << (255 - heat) << ")";
        fill = color.str();
      }
      svg << "<rect x='" << c * kCellPx << "' y='" << r * kCellPx
          << "' width='" << kCellPx << "' height='" << kCellPx << "' fill='"
          << fill << "' stroke='white'/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace gpat
