#include "core/types.hpp"

#include <sstream>

#include "json.hpp"

namespace gpat {

namespace {

// Observation keys are raw byte strings; hex-encode them for the text stream.
std::string hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

}  // namespace

double discounted_return(const EpisodeLog& log, double gamma) {
  if (gamma < 0.0 || gamma >= 1.0) throw ConfigError("gamma must be in [0, 1)");
  double g = 1.0;
  double total = 0.0;
  for (const auto& tr : log.transitions) {
    total += g * tr.reward;
    g *= gamma;
  }
  return total;
}

std::string EpisodeLog::to_record_stream() const {
  nlohmann::ordered_json header;
  header["schema"] = "v1";
  header["seed"] = seed;
  header["team_id"] = team_id;
  header["length"] = transitions.size();
  std::ostringstream out;
  out << header.dump() << "\n";
  for (const auto& tr : transitions) {
    nlohmann::ordered_json j;
    j["obs"] = hex(tr.obs);
    j["action"] = tr.action;
    j["reward"] = tr.reward;
    j["features"] = tr.features;
    j["next_obs"] = hex(tr.next_obs);
    j["terminal"] = tr.terminal;
    if (tr.chosen_library_index >= 0) j["chosen"] = tr.chosen_library_index;
    out << j.dump() << "\n";
  }
  return out.str();
}

uint64_t mix_seed(uint64_t a, uint64_t b) {
  uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace gpat
