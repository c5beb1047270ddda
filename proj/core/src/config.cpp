#include "pheno/config.hpp"

#include <nlohmann/json.hpp>

#include "pheno/error.hpp"
#include "pheno/layout.hpp"

namespace pheno {

using nlohmann::json;

namespace {

template <typename T>
void get_if(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

}  // namespace

std::string config_to_json(const StudyConfig& c) {
  json j;
  j["study_name"] = c.study_name;
  j["tz_offset_min"] = c.tz_offset_min;
  j["compress_uploads"] = c.compress_uploads;
  j["ts_patch_threshold"] = c.ts_patch_threshold;
  j["light_clamp_max"] = c.light_clamp_max;
  j["accel_burst_gap_s"] = c.accel_burst_gap_s;
  j["hrv_max_gap_s"] = c.hrv_max_gap_s;
  j["walk_min_minutes"] = c.walk_min_minutes;
  j["walk_min_steps"] = c.walk_min_steps;
  j["tap_session_join_s"] = c.tap_session_join_s;
  j["sleep_window_cut_min"] = c.sleep_window_cut_min;
  j["sleep_bridge_gap_min"] = c.sleep_bridge_gap_min;
  j["sleep_ref_bed_min"] = c.sleep_ref_bed_min;
  j["sleep_ref_wake_min"] = c.sleep_ref_wake_min;
  j["pause_radius_m"] = c.pause_radius_m;
  j["pause_min_duration_s"] = c.pause_min_duration_s;
  j["home_radius_m"] = c.home_radius_m;
  j["sigloc_merge_m"] = c.sigloc_merge_m;
  j["sigloc_min_dwell_min"] = c.sigloc_min_dwell_min;
  j["night_start_min"] = c.night_start_min;
  j["night_end_min"] = c.night_end_min;
  j["ar_order"] = c.ar_order;
  j["min_history_days"] = c.min_history_days;
  j["gp_length_scale"] = c.gp_length_scale;
  j["gp_period_days"] = c.gp_period_days;
  j["gp_noise_frac"] = c.gp_noise_frac;
  j["mahalanobis_ridge"] = c.mahalanobis_ridge;
  j["anomaly_model"] = c.anomaly_model;
  j["window_pre_start"] = c.window_pre_start;
  j["window_pre_end"] = c.window_pre_end;
  j["window_post_start"] = c.window_post_start;
  j["window_post_end"] = c.window_post_end;
  j["completeness_threshold"] = c.completeness_threshold;
  j["fresh_green_hours"] = c.fresh_green_hours;
  j["fresh_orange_hours"] = c.fresh_orange_hours;
  j["wearing_day_hours"] = c.wearing_day_hours;
  j["efficiency_good"] = c.efficiency_good;
  j["efficiency_fair"] = c.efficiency_fair;
  j["severity_mild"] = c.severity_mild;
  j["severity_high"] = c.severity_high;
  j["api_base"] = c.api_base;
  return j.dump(2) + "\n";
}

StudyConfig config_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::BadArgument, "study.json is not valid JSON");
  StudyConfig c;
  get_if(j, "study_name", c.study_name);
  get_if(j, "tz_offset_min", c.tz_offset_min);
  get_if(j, "compress_uploads", c.compress_uploads);
  get_if(j, "ts_patch_threshold", c.ts_patch_threshold);
  get_if(j, "light_clamp_max", c.light_clamp_max);
  get_if(j, "accel_burst_gap_s", c.accel_burst_gap_s);
  get_if(j, "hrv_max_gap_s", c.hrv_max_gap_s);
  get_if(j, "walk_min_minutes", c.walk_min_minutes);
  get_if(j, "walk_min_steps", c.walk_min_steps);
  get_if(j, "tap_session_join_s", c.tap_session_join_s);
  get_if(j, "sleep_window_cut_min", c.sleep_window_cut_min);
  get_if(j, "sleep_bridge_gap_min", c.sleep_bridge_gap_min);
  get_if(j, "sleep_ref_bed_min", c.sleep_ref_bed_min);
  get_if(j, "sleep_ref_wake_min", c.sleep_ref_wake_min);
  get_if(j, "pause_radius_m", c.pause_radius_m);
  get_if(j, "pause_min_duration_s", c.pause_min_duration_s);
  get_if(j, "home_radius_m", c.home_radius_m);
  get_if(j, "sigloc_merge_m", c.sigloc_merge_m);
  get_if(j, "sigloc_min_dwell_min", c.sigloc_min_dwell_min);
  get_if(j, "night_start_min", c.night_start_min);
  get_if(j, "night_end_min", c.night_end_min);
  get_if(j, "ar_order", c.ar_order);
  get_if(j, "min_history_days", c.min_history_days);
  get_if(j, "gp_length_scale", c.gp_length_scale);
  get_if(j, "gp_period_days", c.gp_period_days);
  get_if(j, "gp_noise_frac", c.gp_noise_frac);
  get_if(j, "mahalanobis_ridge", c.mahalanobis_ridge);
  get_if(j, "anomaly_model", c.anomaly_model);
  get_if(j, "window_pre_start", c.window_pre_start);
  get_if(j, "window_pre_end", c.window_pre_end);
  get_if(j, "window_post_start", c.window_post_start);
  get_if(j, "window_post_end", c.window_post_end);
  get_if(j, "completeness_threshold", c.completeness_threshold);
  get_if(j, "fresh_green_hours", c.fresh_green_hours);
  get_if(j, "fresh_orange_hours", c.fresh_orange_hours);
  get_if(j, "wearing_day_hours", c.wearing_day_hours);
  get_if(j, "efficiency_good", c.efficiency_good);
  get_if(j, "efficiency_fair", c.efficiency_fair);
  get_if(j, "severity_mild", c.severity_mild);
  get_if(j, "severity_high", c.severity_high);
  get_if(j, "api_base", c.api_base);
  return c;
}

StudyConfig load_config(const std::string& path) {
  return config_from_json(read_file(path));
}

void save_config(const StudyConfig& cfg, const std::string& path) {
  write_file_atomic(path, config_to_json(cfg));
}

}  // namespace pheno
