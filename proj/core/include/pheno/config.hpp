#pragma once

#include <cstdint>
#include <string>

namespace pheno {

// Every tunable threshold in the system, persisted as `<root>/study.json`.
// Defaults are the shipped values; unknown keys in the file are ignored and
// missing keys fall back to these defaults, so old configs keep loading.
struct StudyConfig {
  std::string study_name = "hopes";
  // Wall-clock offset the study operates in, minutes east of UTC. Used by the
  // synthetic generator and anywhere "now" must be turned into a local day.
  int tz_offset_min = 480;

  // crypto / ingest
  bool compress_uploads = true;
  std::int64_t ts_patch_threshold = 100000000000LL;  // below this: seconds

  // value fixing
  double light_clamp_max = 65535.0;

  // feature extraction
  double accel_burst_gap_s = 2.0;
  double hrv_max_gap_s = 15.0;
  int walk_min_minutes = 3;
  int walk_min_steps = 10;
  double tap_session_join_s = 300.0;
  int sleep_window_cut_min = 915;   // 15:15 local, minutes after midnight
  int sleep_bridge_gap_min = 30;    // main-sleep gap bridging
  int sleep_ref_bed_min = 1395;     // 23:15
  int sleep_ref_wake_min = 435;     // 07:15

  // mobility
  double pause_radius_m = 50.0;
  double pause_min_duration_s = 300.0;
  double home_radius_m = 100.0;
  double sigloc_merge_m = 200.0;
  double sigloc_min_dwell_min = 15.0;
  int night_start_min = 1260;  // 21:00
  int night_end_min = 360;     // 06:00

  // anomaly
  int ar_order = 3;
  int min_history_days = 21;
  double gp_length_scale = 10.0;
  double gp_period_days = 7.0;
  double gp_noise_frac = 0.1;
  double mahalanobis_ridge = 1e-3;
  std::string anomaly_model = "ar";  // "ar" | "gp"

  // cohort comparison
  int window_pre_start = -45;
  int window_pre_end = -3;
  int window_post_start = 3;
  int window_post_end = 45;
  double completeness_threshold = 0.5;

  // dashboards
  double fresh_green_hours = 24.0;
  double fresh_orange_hours = 96.0;
  double wearing_day_hours = 22.0;
  double efficiency_good = 0.90;
  double efficiency_fair = 0.80;
  double severity_mild = 0.8;
  double severity_high = 0.9;

  // wearsync
  std::string api_base = "http://127.0.0.1:8123";
};

StudyConfig load_config(const std::string& path);
void save_config(const StudyConfig& cfg, const std::string& path);

// JSON round-trip used by load/save and by the CLI flag merge.
std::string config_to_json(const StudyConfig& cfg);
StudyConfig config_from_json(const std::string& text);

}  // namespace pheno
