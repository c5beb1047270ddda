#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pheno/crypto.hpp"

namespace pheno {

namespace fs = std::filesystem;

// On-disk study layout. Raw uploads follow
//   <root>/<study>/<participant>/<kind>/<timestamp>.csv.hcz
// and the six processing stages write to sibling directories:
//   decrypted/ 1.decrypted/ 2.decrypted/ 3.decrypted/ 4.decrypted/ 5.decrypted/
struct StudyLayout {
  fs::path root;
  std::string study;

  fs::path raw_dir() const { return root / study; }
  fs::path raw_participant(const std::string& pid) const { return raw_dir() / pid; }
  fs::path raw_kind(const std::string& pid, const std::string& kind) const {
    return raw_dir() / pid / kind;
  }

  // stage 1..6 output roots; stage 1 is "decrypted", k>=2 is "<k-1>.decrypted"
  fs::path stage_dir(int stage) const;
  fs::path stage_study(int stage) const { return stage_dir(stage) / study; }

  fs::path registry_path() const { return root / "registry.json"; }
  fs::path config_path() const { return root / "study.json"; }
  fs::path keystore_dir() const { return root / "keystore"; }

  fs::path daily_gz(const std::string& pid) const {
    return stage_study(6) / pid / "daily.csv.gz";
  }
  fs::path all_gz() const { return stage_study(6) / "all.csv.gz"; }
  fs::path manifest_json() const { return stage_study(6) / "manifest.json"; }
  fs::path reconciliation_md() const { return stage_study(6) / "manifest-reconciliation.md"; }
  fs::path scores_csv() const { return stage_study(6) / "anomaly-scores.csv"; }
};

// Whole-file IO. write_file_atomic stages to `<path>.tmp` then renames so a
// crashed run never leaves a partial stage output behind.
std::string read_file(const fs::path& p);
Bytes read_file_bytes(const fs::path& p);
void write_file_atomic(const fs::path& p, std::string_view data);
void write_file_atomic(const fs::path& p, const Bytes& data);

// Sorted (lexicographic) listing of regular files / subdirectories, names
// only. Missing directory yields an empty list.
std::vector<std::string> list_files(const fs::path& dir);
std::vector<std::string> list_dirs(const fs::path& dir);

// True when `out` is missing or older than `in` (staleness check for
// stages that rebuild whole tables).
bool needs_rebuild(const fs::path& out, const fs::path& in);

}  // namespace pheno
