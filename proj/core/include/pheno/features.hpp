#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pheno/appgroups.hpp"
#include "pheno/config.hpp"

namespace pheno {

// All summarizers below take rows whose `lms` is a local-frame epoch-ms
// timestamp (timestamp + tz_offset minutes), sorted ascending. Statistics are
// NaN when undefined. Counting statistics are 0 when the family has rows for
// the period and NaN only when the family is entirely absent (callers pass
// empty row sets for absent periods).

struct FeatureParams {
  double accel_burst_gap_s = 2.0;
  double hrv_max_gap_s = 15.0;
  int walk_min_minutes = 3;
  int walk_min_steps = 10;
  double tap_session_join_s = 300.0;
  int sleep_window_cut_min = 915;
  int sleep_bridge_gap_min = 30;
  int sleep_ref_bed_min = 1395;
  int sleep_ref_wake_min = 435;
};
FeatureParams feature_params(const StudyConfig& cfg);

// ---- row types ----
struct AccelRow { std::int64_t lms; double x, y, z; };
struct TokenRow { std::int64_t lms; std::string token; };
struct HeartRow { std::int64_t lms; double bpm; };
struct LightRow { std::int64_t lms; double lux; };
struct PowerRow { std::int64_t lms; std::string event; };
struct SleepRow { std::int64_t lms; std::string stage; int duration_s; };
struct CallRow { std::int64_t lms; std::string direction; double duration_s; std::string type; std::string contact; };
struct MsgRow { std::int64_t lms; std::string direction; std::string contact; std::int64_t length; };
struct StepsRow { std::int64_t lms; int steps; };
struct TapRow { std::int64_t lms; std::string package; AppGroup group; };

// ---- hourly summaries ----
struct AccelHourly { double L_max, L_min, L_std, L_mean, ddt_max; };
AccelHourly accel_hourly(const std::vector<AccelRow>& rows, const FeatureParams& p);

struct AccessibilityHourly { double n_taps, n_keyboard_taps, n_delete_taps, delete_ratio; };
AccessibilityHourly accessibility_hourly(const std::vector<TokenRow>& rows);

struct HeartHourly { double HR_max, HR_min, HR_std, HR_mean, HRV_max, HRV_min, HRV_std; };
HeartHourly heart_hourly(const std::vector<HeartRow>& rows, const FeatureParams& p);

struct LightHourly { double max_log1p, mean_log1p, min_log1p, high50; };
LightHourly light_hourly(const std::vector<LightRow>& rows);

// ---- daily summaries ----
struct HeartDaily {
  double HR_max, HR_min, HR_std, HR_mean, HR_median;
  double HRV_max, HRV_min, absHRV_mean, absHRV_std, HR_q25, HR_q125, HRV_std;
};
HeartDaily heart_daily(const std::vector<HeartRow>& rows, const FeatureParams& p);

struct LightDaily { double max_log1p, mean_log1p, high50; };
LightDaily light_daily(const std::vector<LightRow>& rows);

// Screen sessions for one local day: on events open, off events close,
// sessions still open at day end are clipped to it.
struct ScreenSession { std::int64_t start_lms, end_lms; };
std::vector<ScreenSession> screen_sessions(const std::vector<PowerRow>& day_rows,
                                           std::int64_t day_start_lms, std::int64_t day_end_lms);

struct PowerHourly { double screen_on_s, n_power_events; };
struct PowerDaily {
  double n_power_down, max_screen_on_s, min_screen_on_s, std_screen_on_s, mean_screen_on_s,
      n_screen_sessions;
};
// Hour h of the day; an hour with neither events nor session coverage is
// all-NaN (missing, not zero).
PowerHourly power_hourly(const std::vector<PowerRow>& day_rows,
                         const std::vector<ScreenSession>& sessions,
                         std::int64_t day_start_lms, int hour);
PowerDaily power_daily(const std::vector<PowerRow>& day_rows,
                       const std::vector<ScreenSession>& sessions);

struct SleepDaily {
  double total_deep_hrs, total_light_hrs, total_rem_hrs, total_awake_hrs;
  double total_hrs, main_sleep_hrs;
  double n_awake_main, n_awake_long_main;
  double ratio_deep, ratio_light, ratio_rem, ratio_awake;
  double start_offset_hrs, end_offset_hrs;
  double time_to_asleep_hrs, time_to_getup_hrs;
  double mean_efficiency;
};
// `segments` = all segments whose start falls in the day's sleep window
// [day-1 15:15, day 15:15); window_start_lms identifies that window.
SleepDaily sleep_daily(const std::vector<SleepRow>& segments, std::int64_t window_start_lms,
                       const FeatureParams& p);

// Walks over per-minute step counts (index = minute slot). A walk is a
// maximal run of >= min_minutes consecutive slots, each >= min_steps.
struct Walk { int start_min; int len_min; std::int64_t steps; };
std::vector<Walk> find_walks(const std::vector<int>& minute_steps, int min_minutes,
                             int min_steps);

struct StepsHourly { double n_steps, max_steps_in_min, n_mins_with_steps, mean_steps_per_min; };
struct StepsDaily {
  double n_steps, n_wearing_mins, n_mins_with_steps, n_walks;
  double max_steps_walk, mean_steps_walk, max_walk_dur_mins, mean_walk_dur_mins;
  double steps_per_min_walk, max_consec_mins_over3, max_consec_mins_over30;
  double n_mins_walk, n_steps_walk, max_steps_in_min;
};
StepsHourly steps_hourly(const std::vector<StepsRow>& rows_in_hour);
// heart_rows drive wearing inference: a minute is worn iff it contains a
// heart sample.
StepsDaily steps_daily(const std::vector<StepsRow>& day_rows,
                       const std::vector<HeartRow>& heart_rows, const FeatureParams& p);

struct TapsHourly {
  double n_taps, intertap_max_s, intertap_min_s, intertap_std_s, intertap_mean_s,
      intertap_median_s;
};
struct TapsDaily {
  double n_taps, n_unique_apps;
  double n_taps_per_group[kAppGroupCount];
  double intertap_max_s, intertap_min_s, intertap_std_s, intertap_mean_s, intertap_median_s;
};
// Inter-tap pairs count only adjacent taps inside one screen-on session;
// when the day has no power rows, sessions fall back to gap-joining taps
// closer than tap_session_join_s. Daily inter-tap stats are restricted to
// adjacent pairs of social-messenger taps.
TapsHourly taps_hourly(const std::vector<TapRow>& day_rows,
                       const std::vector<ScreenSession>& sessions, std::int64_t day_start_lms,
                       int hour, const FeatureParams& p);
TapsDaily taps_daily(const std::vector<TapRow>& day_rows,
                     const std::vector<ScreenSession>& sessions, const FeatureParams& p);

struct MsgDaily {
  double n_recv, n_sent, len_recv, len_sent;
  double n_contacts_recv_only, n_contacts_both, n_contacts_sent_only;
  double n_msgs_total, n_contacts_total;
};
MsgDaily msgs_daily(const std::vector<MsgRow>& rows);

struct CallDaily { double n_incoming, n_outgoing, n_missed, total_duration_s, n_contacts_talked; };
CallDaily calls_daily(const std::vector<CallRow>& rows);

// Sleep-window day assignment: returns the day serial whose window
// [day-1 15:15, day 15:15) contains lms.
std::int64_t sleep_window_day(std::int64_t lms, int cut_min);

}  // namespace pheno
