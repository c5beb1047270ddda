#pragma once

#include <cstdint>
#include <vector>

#include "pheno/config.hpp"
#include "pheno/layout.hpp"

namespace pheno {

struct StageReport {
  int stage = 0;
  std::int64_t files_in = 0;   // inputs actually processed this run
  std::int64_t files_out = 0;  // outputs (re)written this run
  std::int64_t rows_dropped = 0;
  std::int64_t duplicates_removed = 0;
  double duration_s = 0.0;
};

// The six sequential stages:
//   1 decrypt      raw chunks            -> decrypted/
//   2 patch        second->ms timestamps -> 1.decrypted/
//   3 concatenate  per (participant,kind), sorted + deduped -> 2.decrypted/
//   4 fix values   light clamp, taps app_group -> 3.decrypted/
//   5 summarize    daily/hourly features per family (gzip) -> 4.decrypted/
//   6 combine      per-participant daily vectors + cohort file -> 5.decrypted/
//
// Stages 1-2 are incremental by output existence; 3-6 rebuild only when an
// input is newer than the output. All writes are atomic, outputs are
// byte-deterministic, and re-running on an unchanged store writes nothing.
// Per-file failures (bad key, corrupt chunk) skip the file and show up as
// files_in > files_out.
std::vector<StageReport> run_pipeline(const StudyLayout& layout, const StudyConfig& cfg,
                                      int first_stage = 1, int last_stage = 6);

}  // namespace pheno
