#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "learn/library.hpp"

using namespace gpat;
namespace fs = std::filesystem;

namespace {

std::string tmp_path(const char* name) {
  return (fs::temp_directory_path() / name).string();
}

PolicyLibrary sample_library() {
  PolicyLibrary lib;
  lib.feature_dim = 3;
  lib.n_actions = 5;
  lib.gamma = 0.95;
  for (int e = 0; e < 2; ++e) {
    PolicyLibraryEntry entry;
    entry.sf = SFTable(5, 3, 0.95);
    for (int k = 0; k < 4; ++k) {
      std::string key = "obs" + std::to_string(k);
      for (int a = 0; a < 5; ++a) {
        double* row = entry.sf.row(key, a);
        for (int i = 0; i < 3; ++i) row[i] = e + k * 0.5 + a * 0.01 + i * 1e-6;
      }
    }
    entry.task_weight = {1.0, 1.0, 1.0};
    entry.source_team_id = e == 0 ? "red" : "orange";
    entry.kind = "library";
    entry.seed = 77 + e;
    entry.timesteps = 1000;
    entry.hyperparams_hash = "abc";
    if (e == 0) {
      entry.dr_weight = WeightVector{0.5, -0.25, 0.125};
      entry.dr_diag.residual_rms = 1e-3;
      entry.dr_diag.sample_count = 42;
      entry.dr_diag.rank = 3;
    } else {
      QTable q;
      q["obs0"] = {1, 2, 3, 4, 5};
      entry.dr_q = q;
      entry.dr_diag.td_episodes = 10;
      entry.dr_diag.td_alpha = 0.05;
    }
    lib.entries.push_back(std::move(entry));
  }
  return lib;
}

}  // namespace

TEST_CASE("library round-trips bit-exactly") {
  auto lib = sample_library();
  std::string path = tmp_path("gpat_test_roundtrip.gpl");
  save_library(lib, path);
  auto loaded = load_library(path);

  CHECK(loaded.feature_dim == 3);
  CHECK(loaded.n_actions == 5);
  CHECK(loaded.gamma == 0.95);
  REQUIRE(loaded.entries.size() == 2);

  for (size_t e = 0; e < 2; ++e) {
    const auto& a = lib.entries[e];
    const auto& b = loaded.entries[e];
    CHECK(a.source_team_id == b.source_team_id);
    CHECK(a.kind == b.kind);
    CHECK(a.seed == b.seed);
    CHECK(a.timesteps == b.timesteps);
    CHECK(a.hyperparams_hash == b.hyperparams_hash);
    CHECK(a.task_weight == b.task_weight);
    CHECK(a.sf.data() == b.sf.data());  // exact double equality
    CHECK(a.dr_weight == b.dr_weight);
    CHECK(a.dr_q == b.dr_q);
    CHECK(a.dr_diag.residual_rms == b.dr_diag.residual_rms);
    CHECK(a.dr_diag.sample_count == b.dr_diag.sample_count);
    CHECK(a.dr_diag.td_episodes == b.dr_diag.td_episodes);
  }
  CHECK(loaded.entries[0].dr_evaluated());
  CHECK(loaded.entries[1].dr_evaluated());
  fs::remove(path);
}

TEST_CASE("saving twice yields identical bytes (sorted keys)") {
  auto lib = sample_library();
  std::string p1 = tmp_path("gpat_test_rep1.gpl");
  std::string p2 = tmp_path("gpat_test_rep2.gpl");
  save_library(lib, p1);
  save_library(lib, p2);
  CHECK(file_checksum(p1) == file_checksum(p2));
  fs::remove(p1);
  fs::remove(p2);
}

TEST_CASE("truncated file is rejected") {
  auto lib = sample_library();
  std::string path = tmp_path("gpat_test_trunc.gpl");
  save_library(lib, path);
  auto size = fs::file_size(path);
  fs::resize_file(path, size / 2);
  CHECK_THROWS_AS(load_library(path), MissingArtifactError);
  fs::remove(path);
}

TEST_CASE("corrupted payload fails the checksum") {
  auto lib = sample_library();
  std::string path = tmp_path("gpat_test_corrupt.gpl");
  save_library(lib, path);
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(64);
    char b = 0x5a;
    f.write(&b, 1);
  }
  CHECK_THROWS_AS(load_library(path), MissingArtifactError);
  fs::remove(path);
}

TEST_CASE("wrong magic is rejected") {
  std::string path = tmp_path("gpat_test_magic.gpl");
  std::ofstream(path, std::ios::binary) << "NOTALIB0 and some trailing bytes";
  CHECK_THROWS_AS(load_library(path), MissingArtifactError);
  fs::remove(path);
}

TEST_CASE("missing file is reported by name") {
  std::string path = tmp_path("gpat_test_nope.gpl");
  fs::remove(path);
  try {
    load_library(path);
    FAIL("expected MissingArtifactError");
  } catch (const MissingArtifactError& e) {
    CHECK(std::string(e.what()).find("gpat_test_nope") != std::string::npos);
  }
}
