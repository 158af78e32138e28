#include "learn/library.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>

namespace gpat {

namespace {

constexpr char kMagic[8] = {'G', 'P', 'A', 'T', 'L', 'I', 'B', '1'};

uint64_t fnv1a(const std::string& bytes, uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : bytes) h = (h ^ c) * 1099511628211ULL;
  return h;
}

class Writer {
 public:
  void u8(uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(uint32_t v) { raw(&v, sizeof v); }
  void u64(uint64_t v) { raw(&v, sizeof v); }
  void i64(int64_t v) { raw(&v, sizeof v); }
  void f64(double v) { raw(&v, sizeof v); }
  void str(const std::string& s) {
    u32(static_cast<uint32_t>(s.size()));
    buf_.append(s);
  }
  void vec(const std::vector<double>& v) {
    u32(static_cast<uint32_t>(v.size()));
    raw(v.data(), v.size() * sizeof(double));
  }
  const std::string& bytes() const { return buf_; }

 private:
  void raw(const void* p, size_t n) {
    buf_.append(static_cast<const char*>(p), n);
  }
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(const std::string& buf) : buf_(buf) {}
  uint8_t u8() { return static_cast<uint8_t>(buf_[need(1)]); }
  uint32_t u32() { return get<uint32_t>(); }
  uint64_t u64() { return get<uint64_t>(); }
  int64_t i64() { return get<int64_t>(); }
  double f64() { return get<double>(); }
  std::string str() {
    uint32_t n = u32();
    size_t at = need(n);
    return buf_.substr(at, n);
  }
  std::vector<double> vec() {
    uint32_t n = u32();
    size_t at = need(n * sizeof(double));
    std::vector<double> v(n);
    std::memcpy(v.data(), buf_.data() + at, n * sizeof(double));
    return v;
  }

 private:
  template <typename T>
  T get() {
    size_t at = need(sizeof(T));
    T v;
    std::memcpy(&v, buf_.data() + at, sizeof(T));
    return v;
  }
  size_t need(size_t n) {
    if (pos_ + n > buf_.size())
      throw MissingArtifactError("library file truncated");
    size_t at = pos_;
    pos_ += n;
    return at;
  }
  const std::string& buf_;
  size_t pos_ = 0;
};

void write_qtable(Writer& w, const QTable& q) {
  // Sorted key order keeps serialization byte-stable.
  std::map<std::string, const std::vector<double>*> sorted;
  for (const auto& [k, v] : q) sorted.emplace(k, &v);
  w.u64(sorted.size());
  for (const auto& [k, v] : sorted) {
    w.str(k);
    w.vec(*v);
  }
}

void write_sftable(Writer& w, const SFTable& sf) {
  std::map<std::string, const std::vector<double>*> sorted;
  for (const auto& [k, v] : sf.data()) sorted.emplace(k, &v);
  w.u64(sorted.size());
  for (const auto& [k, v] : sorted) {
    w.str(k);
    w.vec(*v);
  }
}

}  // namespace

void save_library(const PolicyLibrary& lib, const std::string& path) {
  Writer w;
  w.u32(static_cast<uint32_t>(lib.feature_dim));
  w.u32(static_cast<uint32_t>(lib.n_actions));
  w.f64(lib.gamma);
  w.u32(static_cast<uint32_t>(lib.entries.size()));
  for (const auto& e : lib.entries) {
    if (e.sf.feature_dim() != lib.feature_dim ||
        e.sf.n_actions() != lib.n_actions)
      throw InvariantError("save_library: entry dimensions disagree");
    w.str(e.source_team_id);
    w.str(e.kind);
    w.str(e.hyperparams_hash);
    w.u64(e.seed);
    w.i64(e.timesteps);
    w.vec(e.task_weight);
    w.u8(e.dr_weight ? 1 : 0);
    if (e.dr_weight) w.vec(*e.dr_weight);
    w.u8(e.dr_q ? 1 : 0);
    if (e.dr_q) write_qtable(w, *e.dr_q);
    w.f64(e.dr_diag.residual_rms);
    w.i64(e.dr_diag.sample_count);
    w.u32(static_cast<uint32_t>(e.dr_diag.rank));
    w.u8(e.dr_diag.ridge_applied ? 1 : 0);
    w.i64(e.dr_diag.td_episodes);
    w.f64(e.dr_diag.td_alpha);
    write_sftable(w, e.sf);
  }

  std::string payload = w.bytes();
  uint64_t checksum = fnv1a(payload);

  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw MissingArtifactError("cannot write library: " + path);
    out.write(kMagic, sizeof kMagic);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    out.write(reinterpret_cast<const char*>(&checksum), sizeof checksum);
    if (!out) throw MissingArtifactError("short write: " + path);
  }
  std::filesystem::rename(tmp, path);
}

PolicyLibrary load_library(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingArtifactError("library file not found: " + path);
  std::string raw((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (raw.size() < sizeof(kMagic) + sizeof(uint64_t) ||
      std::memcmp(raw.data(), kMagic, sizeof kMagic) != 0)
    throw MissingArtifactError("not a library file (bad magic/version): " +
                               path);

  std::string payload =
      raw.substr(sizeof kMagic, raw.size() - sizeof(kMagic) - sizeof(uint64_t));
  uint64_t stored;
  std::memcpy(&stored, raw.data() + raw.size() - sizeof stored, sizeof stored);
  if (fnv1a(payload) != stored)
    throw MissingArtifactError("library checksum mismatch: " + path);

  Reader r(payload);
  PolicyLibrary lib;
  lib.feature_dim = static_cast<int>(r.u32());
  lib.n_actions = static_cast<int>(r.u32());
  lib.gamma = r.f64();
  uint32_t count = r.u32();
  for (uint32_t i = 0; i < count; ++i) {
    PolicyLibraryEntry e;
    e.source_team_id = r.str();
    e.kind = r.str();
    e.hyperparams_hash = r.str();
    e.seed = r.u64();
    e.timesteps = r.i64();
    e.task_weight = r.vec();
    if (static_cast<int>(e.task_weight.size()) != lib.feature_dim)
      throw MissingArtifactError("library entry feature dim inconsistent");
    if (r.u8()) {
      e.dr_weight = r.vec();
      if (static_cast<int>(e.dr_weight->size()) != lib.feature_dim)
        throw MissingArtifactError("library dr_weight dim inconsistent");
    }
    if (r.u8()) {
      QTable q;
      uint64_t n = r.u64();
      for (uint64_t k = 0; k < n; ++k) {
        std::string key = r.str();
        q.emplace(std::move(key), r.vec());
      }
      e.dr_q = std::move(q);
    }
    e.dr_diag.residual_rms = r.f64();
    e.dr_diag.sample_count = r.i64();
    e.dr_diag.rank = static_cast<int>(r.u32());
    e.dr_diag.ridge_applied = r.u8() != 0;
    e.dr_diag.td_episodes = r.i64();
    e.dr_diag.td_alpha = r.f64();
    e.sf = SFTable(lib.n_actions, lib.feature_dim, lib.gamma);
    uint64_t n = r.u64();
    for (uint64_t k = 0; k < n; ++k) {
      std::string key = r.str();
      auto row = r.vec();
      if (static_cast<int>(row.size()) != lib.n_actions * lib.feature_dim)
        throw MissingArtifactError("library SF record size inconsistent");
      e.sf.data().emplace(std::move(key), std::move(row));
    }
    lib.entries.push_back(std::move(e));
  }
  return lib;
}

uint64_t file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingArtifactError("file not found: " + path);
  std::string raw((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  return fnv1a(raw);
}

}  // namespace gpat
