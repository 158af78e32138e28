// gpat — config-driven harness over the C API.
//
// Subcommands: pretrain, fit-dr, eval, run, report.
// Exit codes mirror the API: 0 ok, 2 config error, 3 missing artifact,
// 4 internal error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gpat/gpat.h"

namespace {

int fail(gpat_status st) {
  std::cerr << "error: " << gpat_last_error() << "\n";
  return static_cast<int>(st);
}

struct ConfigHandle {
  gpat_config* cfg = nullptr;
  ~ConfigHandle() { gpat_config_free(cfg); }
};

int load(const std::string& path, const std::string& output_dir,
         ConfigHandle& h) {
  gpat_status st = gpat_config_load(path.c_str(), &h.cfg);
  if (st != GPAT_OK) return fail(st);
  std::string dir = output_dir;
  if (dir.empty())
    if (const char* env = std::getenv("GPAT_OUTPUT_DIR")) dir = env;
  if (!dir.empty()) gpat_config_set_output_dir(h.cfg, dir.c_str());
  return 0;
}

int effective_jobs(int jobs) {
  if (jobs > 0) return jobs;
  if (const char* env = std::getenv("GPAT_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("gpat ") + gpat_version() +
               " — zero-shot ad hoc teamwork laboratory"};
  app.require_subcommand(1);

  std::string config_path, output_dir, results_dir, render_mode = "none";
  std::string methods_csv;
  int jobs = 0;
  bool force = false;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config)
      cmd->add_option("-c,--config", config_path, "experiment config (JSON)")
          ->required()
          ->check(CLI::ExistingFile);
    cmd->add_option("-o,--output-dir", output_dir,
                    "override the config's output directory");
  };

  auto* pretrain = app.add_subcommand(
      "pretrain", "train the policy library (and robust baseline)");
  add_common(pretrain, true);

  auto* fitdr = app.add_subcommand(
      "fit-dr", "fit difference-reward value functions into the library");
  add_common(fitdr, true);
  fitdr->add_flag("--force", force, "refit even if already fitted");

  auto* eval = app.add_subcommand("eval", "evaluate against the target team");
  add_common(eval, true);
  eval->add_option("--methods", methods_csv,
                   "comma-separated method subset (default: config roster)");
  eval->add_option("--render", render_mode, "none|ascii|svg")
      ->check(CLI::IsMember({"none", "ascii", "svg"}));
  eval->add_option("-j,--jobs", jobs, "parallel replicate workers");

  auto* run = app.add_subcommand("run", "pretrain + fit-dr + eval");
  add_common(run, true);
  run->add_option("-j,--jobs", jobs, "parallel replicate workers");

  auto* report = app.add_subcommand("report", "print the results table");
  report->add_option("results_dir", results_dir, "results directory")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (report->parsed()) {
    int64_t len = 0;
    gpat_status st = gpat_report(results_dir.c_str(), nullptr, 0, &len);
    if (st != GPAT_OK) return fail(st);
    std::vector<char> buf(static_cast<size_t>(len) + 1);
    st = gpat_report(results_dir.c_str(), buf.data(),
                     static_cast<int64_t>(buf.size()), nullptr);
    if (st != GPAT_OK) return fail(st);
    std::cout << buf.data();
    return 0;
  }

  ConfigHandle h;
  if (int rc = load(config_path, output_dir, h); rc != 0) return rc;

  gpat_status st = GPAT_OK;
  if (pretrain->parsed()) {
    st = gpat_pretrain(h.cfg);
  } else if (fitdr->parsed()) {
    st = gpat_fit_dr(h.cfg, force ? 1 : 0);
  } else if (eval->parsed()) {
    st = gpat_eval(h.cfg, methods_csv.empty() ? nullptr : methods_csv.c_str(),
                   render_mode.c_str(), effective_jobs(jobs));
  } else if (run->parsed()) {
    st = gpat_run(h.cfg, effective_jobs(jobs));
  }
  if (st != GPAT_OK) return fail(st);
  return 0;
}
