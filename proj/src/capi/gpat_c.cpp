#include "gpat/gpat.h"

#include <cstring>
#include <sstream>
#include <string>

#include "exp/experiment.hpp"
#include "learn/library.hpp"

namespace {

thread_local std::string g_last_error;

gpat_status set_error(gpat_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// Translate the core exception hierarchy into stable status codes.
template <typename Fn>
gpat_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return GPAT_OK;
  } catch (const gpat::ConfigError& e) {
    return set_error(GPAT_ERR_CONFIG, e.what());
  } catch (const gpat::MissingArtifactError& e) {
    return set_error(GPAT_ERR_MISSING, e.what());
  } catch (const std::exception& e) {
    return set_error(GPAT_ERR_INTERNAL, e.what());
  }
}

std::vector<std::string> split_csv(const char* csv) {
  std::vector<std::string> out;
  if (!csv || !*csv) return out;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

struct gpat_config {
  gpat::ExperimentConfig cfg;
};

struct gpat_library {
  gpat::PolicyLibrary lib;
};

extern "C" {

const char* gpat_version(void) { return "0.1.0"; }

const char* gpat_last_error(void) { return g_last_error.c_str(); }

gpat_status gpat_config_load(const char* path, gpat_config** out) {
  if (!path || !out) return set_error(GPAT_ERR_CONFIG, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* h = new gpat_config{gpat::load_config(path)};
    *out = h;
  });
}

gpat_status gpat_config_parse(const char* json_text, gpat_config** out) {
  if (!json_text || !out) return set_error(GPAT_ERR_CONFIG, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* h = new gpat_config{gpat::parse_config(json_text)};
    *out = h;
  });
}

gpat_status gpat_config_set_output_dir(gpat_config* config, const char* dir) {
  if (!config) return set_error(GPAT_ERR_CONFIG, "null config");
  if (dir && *dir) config->cfg.output_dir = dir;
  return GPAT_OK;
}

void gpat_config_free(gpat_config* config) { delete config; }

gpat_status gpat_pretrain(const gpat_config* config) {
  if (!config) return set_error(GPAT_ERR_CONFIG, "null config");
  return guarded([&] { gpat::cmd_pretrain(config->cfg); });
}

gpat_status gpat_fit_dr(const gpat_config* config, int force) {
  if (!config) return set_error(GPAT_ERR_CONFIG, "null config");
  return guarded([&] { gpat::cmd_fit_dr(config->cfg, force != 0); });
}

gpat_status gpat_eval(const gpat_config* config, const char* methods_csv,
                      const char* render_mode, int jobs) {
  if (!config) return set_error(GPAT_ERR_CONFIG, "null config");
  if (jobs < 1) return set_error(GPAT_ERR_CONFIG, "jobs must be >= 1");
  std::string render = render_mode && *render_mode ? render_mode : "none";
  if (render != "none" && render != "ascii" && render != "svg")
    return set_error(GPAT_ERR_CONFIG, "render_mode must be none/ascii/svg");
  return guarded([&] {
    gpat::cmd_eval(config->cfg, split_csv(methods_csv), render, jobs);
  });
}

gpat_status gpat_run(const gpat_config* config, int jobs) {
  if (!config) return set_error(GPAT_ERR_CONFIG, "null config");
  if (jobs < 1) return set_error(GPAT_ERR_CONFIG, "jobs must be >= 1");
  return guarded([&] { gpat::run_experiment(config->cfg, jobs); });
}

gpat_status gpat_report(const char* results_dir, char* buf, int64_t buf_len,
                        int64_t* out_len) {
  if (!results_dir) return set_error(GPAT_ERR_CONFIG, "null results_dir");
  return guarded([&] {
    std::string table = gpat::cmd_report(results_dir);
    if (out_len) *out_len = static_cast<int64_t>(table.size());
    if (buf && buf_len > 0) {
      int64_t n = std::min<int64_t>(buf_len - 1, table.size());
      std::memcpy(buf, table.data(), static_cast<size_t>(n));
      buf[n] = '\0';
    }
  });
}

gpat_status gpat_library_open(const char* path, gpat_library** out) {
  if (!path || !out) return set_error(GPAT_ERR_CONFIG, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* h = new gpat_library{gpat::load_library(path)};
    *out = h;
  });
}

gpat_status gpat_library_info(const gpat_library* lib, int64_t* n_entries,
                              int64_t* feature_dim, int64_t* n_actions,
                              int* dr_fitted) {
  if (!lib) return set_error(GPAT_ERR_CONFIG, "null library");
  if (n_entries) *n_entries = static_cast<int64_t>(lib->lib.entries.size());
  if (feature_dim) *feature_dim = lib->lib.feature_dim;
  if (n_actions) *n_actions = lib->lib.n_actions;
  if (dr_fitted) {
    bool all = !lib->lib.entries.empty();
    for (const auto& e : lib->lib.entries) all = all && e.dr_evaluated();
    *dr_fitted = all ? 1 : 0;
  }
  return GPAT_OK;
}

void gpat_library_free(gpat_library* lib) { delete lib; }

}  // extern "C"
