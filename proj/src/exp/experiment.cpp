#include "exp/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "exp/render.hpp"
#include "json.hpp"
#include "learn/baselines.hpp"

namespace gpat {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

// Seed stream tags; one stream per concern keeps stages independent.
enum SeedStream : uint64_t {
  kStreamLibrary = 0x11000,
  kStreamRobust = 0x22000,
  kStreamOracle = 0x33000,
  kStreamDR = 0x44000,
  kStreamPlastic = 0x55000,
  kStreamEval = 0x66000,
  kStreamBootstrap = 0x77000,
  kStreamRender = 0x88000,
};

uint64_t stream_seed(const ExperimentConfig& c, SeedStream stream,
                     uint64_t a = 0, uint64_t b = 0) {
  return mix_seed(c.base_seed(), stream + a * 256 + b);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw MissingArtifactError("cannot write " + path.string());
  out << content;
}

std::vector<Policy*> raw(const std::vector<std::unique_ptr<Policy>>& owned) {
  std::vector<Policy*> out;
  for (const auto& p : owned) out.push_back(p.get());
  return out;
}

bool library_fitted(const PolicyLibrary& lib) {
  for (const auto& e : lib.entries)
    if (!e.dr_evaluated()) return false;
  return !lib.entries.empty();
}

// Choices the run depends on that the config does not fully pin down.
ordered_json run_decisions(const ExperimentConfig& config) {
  ordered_json d;
  d["actions"] = "up/down/left/right/stay; off-grid resolves to stay";
  d["agent_collision"] = "agents may co-occupy a cell";
  d["co_collection"] = "object counts once, credited to lowest agent index";
  d["move_order"] = config.env.type == "pursuit"
                        ? "predators move, captures resolve, prey move"
                        : "simultaneous joint move, then collection";
  if (config.env.type == "pursuit")
    d["hard_capture"] =
        "two predators on or orthogonally adjacent to the prey cell "
        "post-move";
  d["dr_counterfactual"] =
      config.dr.counterfactual == CounterfactualMode::kResimulate
          ? "resimulate"
          : "frozen_next_state";
  d["reported_metric"] = "discounted team return";
  return d;
}

void write_manifest(const ExperimentConfig& config, const std::string& stage,
                    ordered_json extra) {
  ordered_json m;
  m["stage"] = stage;
  m["version"] = kVersion;
  m["config_hash"] = config.hash;
  m["seed"] = config.seed;
  m["base_seed"] = config.base_seed();
  m["decisions"] = run_decisions(config);
  m.update(extra);
  write_file(fs::path(config.output_dir) / ("manifest_" + stage + ".json"),
             m.dump(2) + "\n");
}

struct MethodReplicateResult {
  std::vector<double> returns;
  UsageStats usage;
  std::vector<double> learner_obj;   // per-type sums over all episodes
  std::vector<double> teammate_obj;
  int64_t episodes = 0;
};

void accumulate_objects(MethodReplicateResult& res, const EpisodeLog& log,
                        int d) {
  if (res.learner_obj.empty()) {
    res.learner_obj.assign(d, 0.0);
    res.teammate_obj.assign(d, 0.0);
  }
  for (const auto& tr : log.transitions) {
    for (size_t a = 0; a < tr.agent_features.size(); ++a) {
      auto& dst = a == 0 ? res.learner_obj : res.teammate_obj;
      for (int i = 0; i < d; ++i) dst[i] += tr.agent_features[a][i];
    }
  }
  res.episodes++;
}

MethodReplicateResult evaluate_policy(Environment& env, Policy& policy,
                                      const std::vector<Policy*>& target,
                                      int episodes, double gamma, Rng& rng) {
  MethodReplicateResult res;
  res.returns.reserve(episodes);
  for (int ep = 0; ep < episodes; ++ep) {
    auto log = rollout(env, policy, target, rng, env.horizon());
    res.returns.push_back(discounted_return(log, gamma));
    accumulate_objects(res, log, env.feature_dim());
  }
  return res;
}

int method_index(const std::vector<std::string>& methods,
                 const std::string& name) {
  for (size_t i = 0; i < methods.size(); ++i)
    if (methods[i] == name) return static_cast<int>(i);
  return -1;
}

}  // namespace

int training_replicates(const ExperimentConfig& config) {
  return config.eval.replicate_mode == "retrain" ? config.eval.replicates : 1;
}

std::string library_path(const ExperimentConfig& config, int replicate) {
  int k = config.eval.replicate_mode == "retrain" ? replicate : 0;
  return (fs::path(config.output_dir) /
          ("lib_" + config.hash + "_r" + std::to_string(k) + ".gpl"))
      .string();
}

std::string robust_path(const ExperimentConfig& config, int replicate) {
  int k = config.eval.replicate_mode == "retrain" ? replicate : 0;
  return (fs::path(config.output_dir) /
          ("robust_" + config.hash + "_r" + std::to_string(k) + ".gpl"))
      .string();
}

void cmd_pretrain(const ExperimentConfig& config) {
  config.validate();
  fs::create_directories(config.output_dir);
  const bool want_robust = method_index(config.methods, "robust") >= 0;
  const int reps = training_replicates(config);
  ordered_json trained = ordered_json::array();

  for (int r = 0; r < reps; ++r) {
    std::string path = library_path(config, r);
    if (config.reuse && fs::exists(path)) {
      trained.push_back({{"replicate", r}, {"cache_hit", true}});
      continue;
    }
    PolicyLibrary lib;
    auto probe = config.make_env();
    lib.feature_dim = probe->feature_dim();
    lib.n_actions = probe->action_count(kLearnerSlot);
    lib.gamma = config.gamma;

    for (size_t i = 0; i < config.source_teams.size(); ++i) {
      const auto& team = config.source_teams[i];
      SFHyperparams hp;
      hp.alpha = config.train.alpha;
      hp.epsilon = config.train.epsilon;
      hp.gamma = config.gamma;
      hp.total_timesteps = config.train.timesteps;
      hp.seed = stream_seed(config, kStreamLibrary, r, i);
      Rng rng(hp.seed);
      auto env = config.make_env();
      auto teammates = config.make_team(team, mix_seed(hp.seed, 0x7ea11ULL));
      auto res = sfql_train(*env, raw(teammates), env->team_weight(), hp, rng);

      PolicyLibraryEntry e;
      e.sf = std::move(res.sf);
      e.task_weight = env->team_weight();
      e.source_team_id = team.id;
      e.kind = "library";
      e.seed = hp.seed;
      e.timesteps = res.timesteps;
      e.hyperparams_hash = hp.hash();
      lib.entries.push_back(std::move(e));
    }
    save_library(lib, path);
    trained.push_back({{"replicate", r},
                       {"path", path},
                       {"checksum", file_checksum(path)}});

    if (want_robust) {
      std::string rpath = robust_path(config, r);
      if (!(config.reuse && fs::exists(rpath))) {
        SFHyperparams hp;
        hp.alpha = config.train.alpha;
        hp.epsilon = config.train.epsilon;
        hp.gamma = config.gamma;
        // Budget parity: the robust learner gets the whole library budget.
        hp.total_timesteps = config.train.timesteps *
                             static_cast<int64_t>(config.source_teams.size());
        hp.seed = stream_seed(config, kStreamRobust, r);
        Rng rng(hp.seed);
        auto env = config.make_env();
        std::vector<std::vector<std::unique_ptr<Policy>>> owned;
        std::vector<std::vector<Policy*>> teams;
        for (const auto& team : config.source_teams) {
          owned.push_back(config.make_team(team, mix_seed(hp.seed, 0x7ea11ULL)));
          teams.push_back(raw(owned.back()));
        }
        auto entry = train_robust(*env, teams, env->team_weight(), hp, rng);
        PolicyLibrary rlib;
        rlib.feature_dim = env->feature_dim();
        rlib.n_actions = env->action_count(kLearnerSlot);
        rlib.gamma = config.gamma;
        rlib.entries.push_back(std::move(entry));
        save_library(rlib, rpath);
      }
    }
  }

  ordered_json extra;
  ordered_json ids = ordered_json::array();
  for (const auto& t : config.source_teams) ids.push_back(t.id);
  extra["source_team_ids"] = ids;
  extra["libraries"] = trained;
  extra["timesteps_per_policy"] = config.train.timesteps;
  write_manifest(config, "pretrain", extra);
}

void cmd_fit_dr(const ExperimentConfig& config, bool force) {
  config.validate();
  const int reps = training_replicates(config);
  ordered_json report = ordered_json::array();

  for (int r = 0; r < reps; ++r) {
    std::string path = library_path(config, r);
    if (!fs::exists(path))
      throw MissingArtifactError("library missing (run pretrain first): " +
                                 path);
    PolicyLibrary lib = load_library(path);
    if (library_fitted(lib) && !force)
      throw ConfigError("library already DR-fitted (use --force): " + path);

    for (size_t i = 0; i < lib.entries.size(); ++i) {
      auto& entry = lib.entries[i];
      // Step 2 runs exclusively against the entry's own source team.
      const TeamSpec* team = nullptr;
      for (const auto& t : config.source_teams)
        if (t.id == entry.source_team_id) team = &t;
      if (!team)
        throw ConfigError("library entry references unknown source team: " +
                          entry.source_team_id);
      uint64_t seed = stream_seed(config, kStreamDR, r, i);
      Rng rng(seed);
      auto env = config.make_env();
      auto teammates = config.make_team(
          *team, mix_seed(stream_seed(config, kStreamLibrary, r, i), 0x7ea11ULL));

      if (config.dr.branch == "linear") {
        auto samples =
            collect_dr_dataset(*env, entry, raw(teammates),
                               config.dr.episodes, rng,
                               config.dr.counterfactual);
        auto fit = fit_dr_weights(samples);
        entry.dr_weight = fit.w;
        entry.dr_q.reset();
        entry.dr_diag = fit.diag;
      } else {
        entry.dr_q = td_policy_eval_dr(*env, entry, raw(teammates),
                                       config.dr.td_episodes,
                                       config.dr.td_alpha, config.gamma, rng,
                                       config.dr.counterfactual);
        entry.dr_weight.reset();
        entry.dr_diag = {};
        entry.dr_diag.td_episodes = config.dr.td_episodes;
        entry.dr_diag.td_alpha = config.dr.td_alpha;
      }

      ordered_json ej;
      ej["replicate"] = r;
      ej["source_team_id"] = entry.source_team_id;
      ej["branch"] = config.dr.branch;
      if (entry.dr_weight) ej["dr_weight"] = *entry.dr_weight;
      ej["residual_rms"] = entry.dr_diag.residual_rms;
      ej["sample_count"] = entry.dr_diag.sample_count;
      ej["rank"] = entry.dr_diag.rank;
      ej["ridge_applied"] = entry.dr_diag.ridge_applied;
      ej["td_episodes"] = entry.dr_diag.td_episodes;
      report.push_back(std::move(ej));
    }
    save_library(lib, path);
  }

  write_file(fs::path(config.output_dir) / "dr_report.json",
             report.dump(2) + "\n");
  ordered_json extra;
  extra["branch"] = config.dr.branch;
  extra["entries"] = report;
  write_manifest(config, "fitdr", extra);
}

namespace {

std::map<std::string, MethodReplicateResult> eval_replicate(
    const ExperimentConfig& config, const std::vector<std::string>& methods,
    int r) {
  std::map<std::string, MethodReplicateResult> out;
  auto target_owned =
      config.make_team(config.target_team,
                       mix_seed(stream_seed(config, kStreamEval, 0, r), 0x7ea11ULL));
  auto target = raw(target_owned);

  const bool needs_library = method_index(methods, "gpat") >= 0 ||
                             method_index(methods, "gpat_nodr") >= 0 ||
                             method_index(methods, "plastic") >= 0;
  PolicyLibrary lib;
  if (needs_library) lib = load_library(library_path(config, r));

  for (size_t mi = 0; mi < methods.size(); ++mi) {
    const std::string& method = methods[mi];
    Rng eval_rng(stream_seed(config, kStreamEval, mi + 1, r));
    auto env = config.make_env();

    if (method == "oracle") {
      SFHyperparams hp;
      hp.alpha = config.train.alpha;
      hp.epsilon = config.train.epsilon;
      hp.gamma = config.gamma;
      // Budget parity: the library and the robust baseline each consume
      // timesteps x n_source_teams environment interactions in total, so the
      // oracle skyline gets the same budget against the target team.
      hp.total_timesteps =
          config.train.timesteps *
          static_cast<int64_t>(config.source_teams.size());
      hp.seed = stream_seed(config, kStreamOracle, r);
      Rng train_rng(hp.seed);
      auto entry = train_oracle(*env, target, env->team_weight(), hp,
                                train_rng);
      auto policy = entry.policy();
      out[method] = evaluate_policy(*env, policy, target, config.eval.episodes,
                                    config.gamma, eval_rng);
    } else if (method == "robust") {
      PolicyLibrary rlib = load_library(robust_path(config, r));
      auto policy = rlib.entries.at(0).policy();
      out[method] = evaluate_policy(*env, policy, target, config.eval.episodes,
                                    config.gamma, eval_rng);
    } else if (method == "plastic") {
      Rng pick_rng(stream_seed(config, kStreamPlastic, r));
      int best = plastic_best(lib, *env, target, config.eval.plastic_episodes,
                              config.gamma, pick_rng);
      auto policy = lib.entries[best].policy();
      out[method] = evaluate_policy(*env, policy, target, config.eval.episodes,
                                    config.gamma, eval_rng);
    } else if (method == "gpat" || method == "gpat_nodr") {
      GPIMode mode =
          method == "gpat" ? GPIMode::kWithDR : GPIMode::kWithoutDR;
      GPIExecutor exec(&lib, mode);
      auto zs = evaluate_zero_shot(exec, *env, target, config.eval.episodes,
                                   eval_rng, config.target_team.id);
      MethodReplicateResult res;
      res.usage = zs.usage;
      for (const auto& log : zs.logs) {
        res.returns.push_back(discounted_return(log, config.gamma));
        accumulate_objects(res, log, env->feature_dim());
      }
      out[method] = std::move(res);
    }
  }
  return out;
}

void emit_renders(const ExperimentConfig& config,
                  const std::vector<std::string>& methods,
                  const std::string& render_mode) {
  fs::path dir = fs::path(config.output_dir) / "renders";
  auto target_owned = config.make_team(
      config.target_team,
      mix_seed(stream_seed(config, kStreamEval, 0, 0), 0x7ea11ULL));
  auto target = raw(target_owned);
  PolicyLibrary lib = load_library(library_path(config, 0));

  for (const auto& method : methods) {
    if (method != "gpat" && method != "gpat_nodr") continue;
    GPIMode mode = method == "gpat" ? GPIMode::kWithDR : GPIMode::kWithoutDR;
    GPIExecutor exec(&lib, mode);
    Rng rng(stream_seed(config, kStreamRender, 0, 0));
    auto env = config.make_env();
    if (render_mode == "svg") {
      write_file(dir / (method + "_episode.svg"),
                 render_episode_svg(*env, exec, target, rng));
    } else {
      write_file(dir / (method + "_episode.txt"),
                 render_episode_ascii(*env, exec, target, rng));
    }
    // Fig.-style value map from a fixed initial state.
    auto map_env = config.make_env();
    Rng map_rng(stream_seed(config, kStreamRender, 1, 0));
    map_env->reset(map_rng);
    auto map = value_map(*map_env, [&](const std::string& key) {
      return gpi_state_value(exec, key);
    });
    write_file(dir / (method + "_value_map.csv"), value_map_csv(map));
    write_file(dir / (method + "_value_map.svg"), value_map_svg(map));
  }
}

}  // namespace

ExperimentResults cmd_eval(const ExperimentConfig& config,
                           const std::vector<std::string>& methods_override,
                           const std::string& render_mode, int jobs) {
  config.validate();
  const std::vector<std::string>& methods =
      methods_override.empty() ? config.methods : methods_override;
  const int reps = config.eval.replicates;

  // Fail early with the missing artifact's name.
  const bool needs_library = method_index(methods, "gpat") >= 0 ||
                             method_index(methods, "gpat_nodr") >= 0 ||
                             method_index(methods, "plastic") >= 0;
  for (int r = 0; r < reps; ++r) {
    if (needs_library) {
      std::string path = library_path(config, r);
      if (!fs::exists(path))
        throw MissingArtifactError("library missing (run pretrain): " + path);
      if (method_index(methods, "gpat") >= 0 &&
          !library_fitted(load_library(path)))
        throw MissingArtifactError("library not DR-fitted (run fit-dr): " +
                                   path);
    }
    if (method_index(methods, "robust") >= 0 &&
        !fs::exists(robust_path(config, r)))
      throw MissingArtifactError("robust policy missing (run pretrain): " +
                                 robust_path(config, r));
  }

  std::vector<std::map<std::string, MethodReplicateResult>> per_rep(reps);
  if (jobs <= 1) {
    for (int r = 0; r < reps; ++r)
      per_rep[r] = eval_replicate(config, methods, r);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1))
        per_rep[r] = eval_replicate(config, methods, r);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(jobs, reps); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ExperimentResults results;
  results.results_dir = config.output_dir;
  double oracle_iqm = -1.0;

  for (size_t mi = 0; mi < methods.size(); ++mi) {
    const std::string& method = methods[mi];
    ReplicateMatrix matrix;
    ResultRow row;
    row.method = method;
    std::vector<int64_t> usage_counts;
    std::vector<double> learner_obj, teammate_obj;
    int64_t obj_episodes = 0;
    for (int r = 0; r < reps; ++r) {
      const auto& res = per_rep[r].at(method);
      matrix.returns.push_back(res.returns);
      if (!res.usage.counts.empty()) {
        usage_counts.resize(res.usage.counts.size(), 0);
        for (size_t i = 0; i < res.usage.counts.size(); ++i)
          usage_counts[i] += res.usage.counts[i];
      }
      if (!res.learner_obj.empty()) {
        learner_obj.resize(res.learner_obj.size(), 0.0);
        teammate_obj.resize(res.teammate_obj.size(), 0.0);
        for (size_t i = 0; i < res.learner_obj.size(); ++i) {
          learner_obj[i] += res.learner_obj[i];
          teammate_obj[i] += res.teammate_obj[i];
        }
        obj_episodes += res.episodes;
      }
    }
    row.iqm = iqm(matrix.pooled());
    Rng boot_rng(stream_seed(config, kStreamBootstrap, mi));
    auto ci = bootstrap_ci(matrix, config.eval.resamples, config.eval.ci_level,
                           boot_rng);
    row.ci_low = ci.low;
    row.ci_high = ci.high;
    if (!usage_counts.empty()) {
      int64_t total = 0;
      for (int64_t c : usage_counts) total += c;
      for (int64_t c : usage_counts)
        row.usage.push_back(total ? static_cast<double>(c) / total : 0.0);
    }
    if (obj_episodes > 0) {
      for (double v : learner_obj) row.learner_objects.push_back(v / obj_episodes);
      for (double v : teammate_obj)
        row.teammate_objects.push_back(v / obj_episodes);
    }
    if (method == "oracle") oracle_iqm = row.iqm;
    results.rows.push_back(std::move(row));
    results.matrices.emplace(method, std::move(matrix));
  }
  for (auto& row : results.rows)
    if (oracle_iqm > 0.0) row.pct_optimality = row.iqm / oracle_iqm;

  // ---- artifacts ----
  fs::create_directories(config.output_dir);
  std::ostringstream csv;
  csv << "method,iqm,ci_low,ci_high,pct_optimality\n";
  for (const auto& row : results.rows)
    csv << row.method << "," << fmt(row.iqm) << "," << fmt(row.ci_low) << ","
        << fmt(row.ci_high) << "," << fmt(row.pct_optimality) << "\n";
  write_file(fs::path(config.output_dir) / "results.csv", csv.str());

  for (const auto& [method, matrix] : results.matrices) {
    std::ostringstream m;
    for (const auto& rrow : matrix.returns) {
      for (size_t i = 0; i < rrow.size(); ++i)
        m << (i ? "," : "") << fmt(rrow[i]);
      m << "\n";
    }
    write_file(fs::path(config.output_dir) / ("matrix_" + method + ".csv"),
               m.str());
  }
  for (const auto& row : results.rows) {
    if (row.usage.empty()) continue;
    std::ostringstream u;
    u << "entry,fraction\n";
    for (size_t i = 0; i < row.usage.size(); ++i)
      u << i << "," << fmt(row.usage[i]) << "\n";
    write_file(fs::path(config.output_dir) / ("usage_" + row.method + ".csv"),
               u.str());
  }
  for (const auto& row : results.rows) {
    if (row.learner_objects.empty()) continue;
    std::ostringstream o;
    o << "role";
    for (size_t i = 0; i < row.learner_objects.size(); ++i) o << ",type" << i;
    o << "\nlearner";
    for (double v : row.learner_objects) o << "," << fmt(v);
    o << "\nteammates";
    for (double v : row.teammate_objects) o << "," << fmt(v);
    o << "\n";
    write_file(
        fs::path(config.output_dir) / ("objects_" + row.method + ".csv"),
        o.str());
  }

  ordered_json extra;
  ordered_json ms = ordered_json::array();
  for (const auto& m : methods) ms.push_back(m);
  extra["methods"] = ms;
  extra["target_team_id"] = config.target_team.id;
  extra["episodes"] = config.eval.episodes;
  extra["replicates"] = reps;
  extra["jobs"] = jobs;
  if (needs_library) {
    ordered_json checks = ordered_json::array();
    for (int r = 0; r < reps; ++r)
      checks.push_back(file_checksum(library_path(config, r)));
    extra["library_checksums"] = checks;
  }
  write_manifest(config, "eval", extra);

  if (render_mode != "none" && needs_library)
    emit_renders(config, methods, render_mode);

  return results;
}

ExperimentResults run_experiment(const ExperimentConfig& config, int jobs) {
  cmd_pretrain(config);
  bool fitted = true;
  for (int r = 0; r < training_replicates(config); ++r) {
    std::string path = library_path(config, r);
    if (!fs::exists(path) || !library_fitted(load_library(path))) {
      fitted = false;
      break;
    }
  }
  if (!fitted) cmd_fit_dr(config);
  return cmd_eval(config, {}, "none", jobs);
}

std::string cmd_report(const std::string& results_dir) {
  fs::path path = fs::path(results_dir) / "results.csv";
  std::ifstream in(path);
  if (!in)
    throw MissingArtifactError("results.csv not found in " + results_dir);
  std::string line;
  std::getline(in, line);  // header
  std::ostringstream out;
  out << std::left << std::setw(12) << "method" << std::right << std::setw(10)
      << "iqm" << std::setw(22) << "95% CI" << std::setw(12) << "% optimal"
      << "\n";
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string method, iqm_s, lo_s, hi_s, pct_s;
    std::getline(ls, method, ',');
    std::getline(ls, iqm_s, ',');
    std::getline(ls, lo_s, ',');
    std::getline(ls, hi_s, ',');
    std::getline(ls, pct_s, ',');
    double pct = std::stod(pct_s);
    char ci[32], pb[16];
    std::snprintf(ci, sizeof ci, "[%.3f, %.3f]", std::stod(lo_s),
                  std::stod(hi_s));
    if (pct >= 0.0)
      std::snprintf(pb, sizeof pb, "%.1f%%", pct * 100.0);
    else
      std::snprintf(pb, sizeof pb, "-");
    char iq[16];
    std::snprintf(iq, sizeof iq, "%.3f", std::stod(iqm_s));
    out << std::left << std::setw(12) << method << std::right << std::setw(10)
        << iq << std::setw(22) << ci << std::setw(12) << pb << "\n";
  }
  return out.str();
}

std::pair<std::vector<double>, std::vector<double>> objects_collected_stats(
    const std::vector<EpisodeLog>& logs, int feature_dim) {
  std::vector<double> learner(feature_dim, 0.0), teammates(feature_dim, 0.0);
  if (logs.empty()) return {learner, teammates};
  for (const auto& log : logs) {
    for (const auto& tr : log.transitions) {
      if (tr.agent_features.empty())
        throw ConfigError("objects_collected_stats: logs lack attribution");
      for (size_t a = 0; a < tr.agent_features.size(); ++a) {
        auto& dst = a == 0 ? learner : teammates;
        for (int i = 0; i < feature_dim; ++i) dst[i] += tr.agent_features[a][i];
      }
    }
  }
  for (auto& v : learner) v /= static_cast<double>(logs.size());
  for (auto& v : teammates) v /= static_cast<double>(logs.size());
  return {learner, teammates};
}

}  // namespace gpat
