#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pheno/anomaly.hpp"
#include "pheno/config.hpp"

namespace pheno {

// Everything the collection dashboard may show about a participant. Built
// from upload metadata only (file names, sync manifests, the registry) —
// the renderer never sees decrypted sensor payloads.
struct ParticipantMeta {
  std::string id;
  std::string phone_model;
  std::string enrollment_date;
  std::vector<std::string> visit_dates;  // sorted ascending
  // Millisecond timestamps of the freshest data per channel; -1 = never.
  std::int64_t last_location_ms = -1;
  std::int64_t last_sociability_ms = -1;
  std::int64_t last_taps_ms = -1;
  std::int64_t last_phone_upload_ms = -1;
  std::int64_t last_wearable_upload_ms = -1;
  std::int64_t last_wake_ms = -1;  // end of the latest main sleep
  std::map<std::int64_t, std::int64_t> heart_samples_by_day;  // day serial -> n
};

// participant -> kind -> day serial -> row count (stage-3 lines)
using CompletionCounts =
    std::map<std::string, std::map<std::string, std::map<std::int64_t, std::int64_t>>>;

// One day of the clinician trend inputs; NaN = missing.
struct ClinicianDay {
  double sleep_hrs = std::numeric_limits<double>::quiet_NaN();
  double sleep_eff = std::numeric_limits<double>::quiet_NaN();  // 0..1
  double msg_contacts = std::numeric_limits<double>::quiet_NaN();
  double calls_over_min = std::numeric_limits<double>::quiet_NaN();
  double away_mins = std::numeric_limits<double>::quiet_NaN();
  double rog_m = std::numeric_limits<double>::quiet_NaN();
};
using ClinicianSeries = std::map<std::string, std::map<std::int64_t, ClinicianDay>>;

// Static single-file HTML renderers. All are pure functions of their
// arguments: same inputs give byte-identical output.
std::string render_collection(const std::vector<ParticipantMeta>& participants,
                              std::int64_t now_ms, const StudyConfig& cfg);
std::string render_completion(const CompletionCounts& counts, std::int64_t end_day, int days);
std::string render_clinician(const ClinicianSeries& series, std::int64_t today_serial,
                             const StudyConfig& cfg);
std::string render_anomaly(const ScoreTable& table, std::int64_t day, const StudyConfig& cfg);

// Bucketing rules, exposed for direct testing.
// age < green  -> "green"; green <= age < orange -> "orange"; else "red".
std::string freshness_class(double age_hours, const StudyConfig& cfg);
// score < mild -> ""; [mild, high) -> "mild"; [high, 1) -> "high"; 1 -> "max".
std::string severity_class(double score, const StudyConfig& cfg);
// total worn hours over elapsed days against the daily wearing target,
// as a percentage capped at 100.
double payment_progress(double worn_hours_total, double elapsed_days, double day_hours);

}  // namespace pheno
