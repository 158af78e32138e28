#pragma once

#include <string>
#include <vector>

#include "core/env.hpp"

namespace gpat {

// One ASCII frame per step of a freshly rolled episode.
std::string render_episode_ascii(Environment& env, Policy& learner,
                                 const std::vector<Policy*>& teammates,
                                 Rng& rng);

// SVG overlay of the trajectories taken over one episode: initial board plus
// one polyline per agent (learner drawn green, teammates purple).
std::string render_episode_svg(Environment& env, Policy& learner,
                               const std::vector<Policy*>& teammates,
                               Rng& rng);

std::string value_map_csv(const std::vector<std::vector<double>>& map);
std::string value_map_svg(const std::vector<std::vector<double>>& map);

}  // namespace gpat
