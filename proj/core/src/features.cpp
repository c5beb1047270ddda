#include "pheno/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

#include "pheno/numeric.hpp"
#include "pheno/time.hpp"

namespace pheno {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

FeatureParams feature_params(const StudyConfig& c) {
  FeatureParams p;
  p.accel_burst_gap_s = c.accel_burst_gap_s;
  p.hrv_max_gap_s = c.hrv_max_gap_s;
  p.walk_min_minutes = c.walk_min_minutes;
  p.walk_min_steps = c.walk_min_steps;
  p.tap_session_join_s = c.tap_session_join_s;
  p.sleep_window_cut_min = c.sleep_window_cut_min;
  p.sleep_bridge_gap_min = c.sleep_bridge_gap_min;
  p.sleep_ref_bed_min = c.sleep_ref_bed_min;
  p.sleep_ref_wake_min = c.sleep_ref_wake_min;
  return p;
}

std::int64_t sleep_window_day(std::int64_t lms, int cut_min) {
  return floor_div(lms - static_cast<std::int64_t>(cut_min) * kMsPerMin, kMsPerDay) + 1;
}

// ---- accel ----

AccelHourly accel_hourly(const std::vector<AccelRow>& rows, const FeatureParams& p) {
  AccelHourly out{kNan, kNan, kNan, kNan, kNan};
  if (rows.empty()) return out;
  std::vector<double> mags;
  mags.reserve(rows.size());
  for (const auto& r : rows) mags.push_back(std::sqrt(r.x * r.x + r.y * r.y + r.z * r.z));
  out.L_max = vec_max(mags);
  out.L_min = vec_min(mags);
  out.L_std = vec_std(mags);
  out.L_mean = vec_mean(mags);
  double ddt = kNan;
  for (size_t i = 1; i < rows.size(); ++i) {
    double dt = static_cast<double>(rows[i].lms - rows[i - 1].lms) / 1000.0;
    if (dt <= 0 || dt > p.accel_burst_gap_s) continue;  // burst break
    double d = std::max({std::fabs(rows[i].x - rows[i - 1].x), std::fabs(rows[i].y - rows[i - 1].y),
                         std::fabs(rows[i].z - rows[i - 1].z)}) /
               dt;
    if (std::isnan(ddt) || d > ddt) ddt = d;
  }
  out.ddt_max = ddt;
  return out;
}

// ---- accessibility ----

AccessibilityHourly accessibility_hourly(const std::vector<TokenRow>& rows) {
  AccessibilityHourly out{kNan, kNan, kNan, kNan};
  if (rows.empty()) return out;
  double total = static_cast<double>(rows.size());
  double keyboard = 0, del = 0;
  for (const auto& r : rows) {
    bool is_kb = r.token == "alpha" || r.token == "num" || r.token == "punct" ||
                 r.token == "DELETE";
    if (is_kb) ++keyboard;
    if (r.token == "DELETE") ++del;
  }
  out.n_taps = total;
  out.n_keyboard_taps = keyboard;
  out.n_delete_taps = del;
  out.delete_ratio = keyboard > 0 ? del / keyboard : kNan;
  return out;
}

// ---- heart ----

namespace {

std::vector<double> hrv_series(const std::vector<HeartRow>& rows, double max_gap_s) {
  std::vector<double> hrv;
  for (size_t i = 1; i < rows.size(); ++i) {
    double dt = static_cast<double>(rows[i].lms - rows[i - 1].lms) / 1000.0;
    if (dt <= 0 || dt > max_gap_s) continue;
    hrv.push_back((rows[i].bpm - rows[i - 1].bpm) / dt);
  }
  return hrv;
}

}  // namespace

HeartHourly heart_hourly(const std::vector<HeartRow>& rows, const FeatureParams& p) {
  HeartHourly out{kNan, kNan, kNan, kNan, kNan, kNan, kNan};
  if (rows.empty()) return out;
  std::vector<double> hr;
  hr.reserve(rows.size());
  for (const auto& r : rows) hr.push_back(r.bpm);
  out.HR_max = vec_max(hr);
  out.HR_min = vec_min(hr);
  out.HR_std = vec_std(hr);
  out.HR_mean = vec_mean(hr);
  auto hrv = hrv_series(rows, p.hrv_max_gap_s);
  if (!hrv.empty()) {
    out.HRV_max = vec_max(hrv);
    out.HRV_min = vec_min(hrv);
    out.HRV_std = vec_std(hrv);
  }
  return out;
}

HeartDaily heart_daily(const std::vector<HeartRow>& rows, const FeatureParams& p) {
  HeartDaily out{kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan};
  if (rows.empty()) return out;
  std::vector<double> hr;
  hr.reserve(rows.size());
  for (const auto& r : rows) hr.push_back(r.bpm);
  out.HR_max = vec_max(hr);
  out.HR_min = vec_min(hr);
  out.HR_std = vec_std(hr);
  out.HR_mean = vec_mean(hr);
  out.HR_median = vec_median(hr);
  out.HR_q25 = vec_quantile(hr, 0.25);
  out.HR_q125 = vec_quantile(hr, 0.125);
  auto hrv = hrv_series(rows, p.hrv_max_gap_s);
  if (!hrv.empty()) {
    out.HRV_max = vec_max(hrv);
    out.HRV_min = vec_min(hrv);
    out.HRV_std = vec_std(hrv);
    std::vector<double> ab;
    ab.reserve(hrv.size());
    for (double v : hrv) ab.push_back(std::fabs(v));
    out.absHRV_mean = vec_mean(ab);
    out.absHRV_std = vec_std(ab);
  }
  return out;
}

// ---- light ----

namespace {

double high50(std::vector<double> lux) {
  if (lux.empty()) return kNan;
  std::sort(lux.begin(), lux.end(), std::greater<>());
  size_t take = (lux.size() + 1) / 2;  // ceil(n/2)
  double s = 0;
  for (size_t i = 0; i < take; ++i) s += lux[i];
  return s / static_cast<double>(take);
}

}  // namespace

LightHourly light_hourly(const std::vector<LightRow>& rows) {
  LightHourly out{kNan, kNan, kNan, kNan};
  if (rows.empty()) return out;
  std::vector<double> lg, raw;
  lg.reserve(rows.size());
  raw.reserve(rows.size());
  for (const auto& r : rows) {
    lg.push_back(std::log1p(r.lux));
    raw.push_back(r.lux);
  }
  out.max_log1p = vec_max(lg);
  out.mean_log1p = vec_mean(lg);
  out.min_log1p = vec_min(lg);
  out.high50 = high50(std::move(raw));
  return out;
}

LightDaily light_daily(const std::vector<LightRow>& rows) {
  LightDaily out{kNan, kNan, kNan};
  if (rows.empty()) return out;
  std::vector<double> lg, raw;
  lg.reserve(rows.size());
  raw.reserve(rows.size());
  for (const auto& r : rows) {
    lg.push_back(std::log1p(r.lux));
    raw.push_back(r.lux);
  }
  out.max_log1p = vec_max(lg);
  out.mean_log1p = vec_mean(lg);
  out.high50 = high50(std::move(raw));
  return out;
}

// ---- power ----

std::vector<ScreenSession> screen_sessions(const std::vector<PowerRow>& day_rows,
                                           std::int64_t day_start_lms,
                                           std::int64_t day_end_lms) {
  std::vector<ScreenSession> out;
  std::int64_t open = -1;
  for (const auto& r : day_rows) {
    if (r.event == "screen_on") {
      if (open < 0) open = r.lms;  // repeated on while open: keep first
    } else if (r.event == "screen_off") {
      if (open >= 0) {
        out.push_back({open, r.lms});
        open = -1;
      }
      // unmatched screen_off ignored
    }
  }
  if (open >= 0) out.push_back({open, day_end_lms});  // clip at day end
  (void)day_start_lms;
  return out;
}

PowerHourly power_hourly(const std::vector<PowerRow>& day_rows,
                         const std::vector<ScreenSession>& sessions,
                         std::int64_t day_start_lms, int hour) {
  PowerHourly out{kNan, kNan};
  std::int64_t h0 = day_start_lms + static_cast<std::int64_t>(hour) * kMsPerHour;
  std::int64_t h1 = h0 + kMsPerHour;
  double events = 0;
  bool present = false;
  for (const auto& r : day_rows) {
    if (r.lms < h0 || r.lms >= h1) continue;
    present = true;
    if (r.event == "screen_on" || r.event == "screen_off" || r.event == "power_down") ++events;
  }
  double on_ms = 0;
  for (const auto& s : sessions) {
    std::int64_t a = std::max(s.start_lms, h0), b = std::min(s.end_lms, h1);
    if (b > a) {
      on_ms += static_cast<double>(b - a);
      present = true;
    }
  }
  if (!present) return out;
  out.screen_on_s = on_ms / 1000.0;
  out.n_power_events = events;
  return out;
}

PowerDaily power_daily(const std::vector<PowerRow>& day_rows,
                       const std::vector<ScreenSession>& sessions) {
  PowerDaily out{kNan, kNan, kNan, kNan, kNan, kNan};
  if (day_rows.empty()) return out;
  double down = 0;
  for (const auto& r : day_rows)
    if (r.event == "power_down") ++down;
  out.n_power_down = down;
  out.n_screen_sessions = static_cast<double>(sessions.size());
  if (!sessions.empty()) {
    std::vector<double> durs;
    durs.reserve(sessions.size());
    for (const auto& s : sessions)
      durs.push_back(static_cast<double>(s.end_lms - s.start_lms) / 1000.0);
    out.max_screen_on_s = vec_max(durs);
    out.min_screen_on_s = vec_min(durs);
    out.std_screen_on_s = vec_std(durs);
    out.mean_screen_on_s = vec_mean(durs);
  }
  return out;
}

// ---- sleep ----

SleepDaily sleep_daily(const std::vector<SleepRow>& segments, std::int64_t window_start_lms,
                       const FeatureParams& p) {
  SleepDaily out{kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan,
                 kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan};
  if (segments.empty()) return out;

  double deep = 0, light = 0, rem = 0, awake = 0;
  for (const auto& s : segments) {
    double hrs = s.duration_s / 3600.0;
    if (s.stage == "deep") deep += hrs;
    else if (s.stage == "light") light += hrs;
    else if (s.stage == "rem") rem += hrs;
    else awake += hrs;
  }
  out.total_deep_hrs = deep;
  out.total_light_hrs = light;
  out.total_rem_hrs = rem;
  out.total_awake_hrs = awake;
  out.total_hrs = deep + light + rem;

  // Main sleep: longest run of segments bridged across gaps <= bridge_gap.
  const std::int64_t bridge_ms = static_cast<std::int64_t>(p.sleep_bridge_gap_min) * kMsPerMin;
  size_t best_begin = 0, best_end = 0;  // [begin, end) indices
  std::int64_t best_span = -1;
  size_t run_begin = 0;
  for (size_t i = 0; i <= segments.size(); ++i) {
    bool boundary = i == segments.size();
    if (!boundary && i > 0) {
      std::int64_t prev_end = segments[i - 1].lms + segments[i - 1].duration_s * 1000LL;
      boundary = segments[i].lms - prev_end > bridge_ms;
    }
    if (boundary) {
      size_t run_end = i;
      std::int64_t span = segments[run_end - 1].lms +
                          segments[run_end - 1].duration_s * 1000LL - segments[run_begin].lms;
      if (span > best_span) {
        best_span = span;
        best_begin = run_begin;
        best_end = run_end;
      }
      run_begin = i;
    }
  }

  std::int64_t main_start = segments[best_begin].lms;
  std::int64_t main_end =
      segments[best_end - 1].lms + segments[best_end - 1].duration_s * 1000LL;
  double main_hrs = static_cast<double>(main_end - main_start) / 3600000.0;
  out.main_sleep_hrs = main_hrs;

  double main_deep = 0, main_light = 0, main_rem = 0, main_awake = 0;
  double n_awake = 0, n_awake_long = 0;
  for (size_t i = best_begin; i < best_end; ++i) {
    const auto& s = segments[i];
    double hrs = s.duration_s / 3600.0;
    if (s.stage == "deep") main_deep += hrs;
    else if (s.stage == "light") main_light += hrs;
    else if (s.stage == "rem") main_rem += hrs;
    else {
      main_awake += hrs;
      ++n_awake;
      if (s.duration_s >= 180) ++n_awake_long;
    }
  }
  out.n_awake_main = n_awake;
  out.n_awake_long_main = n_awake_long;
  if (main_hrs > 0) {
    out.ratio_deep = main_deep / main_hrs;
    out.ratio_light = main_light / main_hrs;
    out.ratio_rem = main_rem / main_hrs;
    out.ratio_awake = main_awake / main_hrs;
    out.mean_efficiency = (main_hrs - main_awake) / main_hrs;
  }

  // References: bed time 23:15 on the window's first civil day, wake time
  // 07:15 on the second.
  std::int64_t window_day0 = floor_div(window_start_lms, kMsPerDay);
  std::int64_t bed_ref = window_day0 * kMsPerDay +
                         static_cast<std::int64_t>(p.sleep_ref_bed_min) * kMsPerMin;
  std::int64_t wake_ref = (window_day0 + 1) * kMsPerDay +
                          static_cast<std::int64_t>(p.sleep_ref_wake_min) * kMsPerMin;
  out.start_offset_hrs = static_cast<double>(main_start - bed_ref) / 3600000.0;
  out.end_offset_hrs = static_cast<double>(main_end - wake_ref) / 3600000.0;

  // Leading/trailing awake runs of the main sleep.
  double lead = 0;
  for (size_t i = best_begin; i < best_end && segments[i].stage == "awake"; ++i)
    lead += segments[i].duration_s / 3600.0;
  double trail = 0;
  for (size_t i = best_end; i-- > best_begin && segments[i].stage == "awake";)
    trail += segments[i].duration_s / 3600.0;
  // A main sleep that is entirely awake counts once, as time-to-asleep.
  bool all_awake = true;
  for (size_t i = best_begin; i < best_end; ++i)
    if (segments[i].stage != "awake") { all_awake = false; break; }
  out.time_to_asleep_hrs = lead;
  out.time_to_getup_hrs = all_awake ? 0.0 : trail;
  return out;
}

// ---- steps ----

std::vector<Walk> find_walks(const std::vector<int>& minute_steps, int min_minutes,
                             int min_steps) {
  std::vector<Walk> walks;
  size_t i = 0;
  const size_t n = minute_steps.size();
  while (i < n) {
    if (minute_steps[i] < min_steps) {
      ++i;
      continue;
    }
    size_t j = i;
    std::int64_t total = 0;
    while (j < n && minute_steps[j] >= min_steps) {
      total += minute_steps[j];
      ++j;
    }
    if (j - i >= static_cast<size_t>(min_minutes))
      walks.push_back({static_cast<int>(i), static_cast<int>(j - i), total});
    i = j;
  }
  return walks;
}

namespace {

// Aggregate rows into minute slots keyed by minute-of-day.
std::unordered_map<int, std::int64_t> minute_slots(const std::vector<StepsRow>& rows) {
  std::unordered_map<int, std::int64_t> slots;
  for (const auto& r : rows) slots[minute_of_day(r.lms)] += r.steps;
  return slots;
}

double max_consecutive_over(const std::vector<int>& mins, int threshold) {
  int best = 0, run = 0;
  for (int v : mins) {
    if (v > threshold) {
      ++run;
      best = std::max(best, run);
    } else {
      run = 0;
    }
  }
  return best;
}

}  // namespace

StepsHourly steps_hourly(const std::vector<StepsRow>& rows_in_hour) {
  StepsHourly out{kNan, kNan, kNan, kNan};
  if (rows_in_hour.empty()) return out;
  auto slots = minute_slots(rows_in_hour);
  std::int64_t total = 0, maxmin = 0, with_steps = 0;
  for (const auto& [m, v] : slots) {
    total += v;
    maxmin = std::max(maxmin, v);
    if (v > 0) ++with_steps;
  }
  out.n_steps = static_cast<double>(total);
  out.max_steps_in_min = static_cast<double>(maxmin);
  out.n_mins_with_steps = static_cast<double>(with_steps);
  out.mean_steps_per_min = static_cast<double>(total) / static_cast<double>(slots.size());
  return out;
}

StepsDaily steps_daily(const std::vector<StepsRow>& day_rows,
                       const std::vector<HeartRow>& heart_rows, const FeatureParams& p) {
  StepsDaily out{kNan, kNan, kNan, kNan, kNan, kNan, kNan,
                 kNan, kNan, kNan, kNan, kNan, kNan, kNan};
  if (day_rows.empty()) return out;

  std::vector<int> mins(1440, 0);
  auto slots = minute_slots(day_rows);
  std::int64_t total = 0, maxmin = 0, with_steps = 0;
  for (const auto& [m, v] : slots) {
    if (m >= 0 && m < 1440) mins[static_cast<size_t>(m)] = static_cast<int>(v);
    total += v;
    maxmin = std::max(maxmin, v);
    if (v > 0) ++with_steps;
  }
  out.n_steps = static_cast<double>(total);
  out.n_mins_with_steps = static_cast<double>(with_steps);
  out.max_steps_in_min = static_cast<double>(maxmin);

  std::set<int> worn;
  for (const auto& r : heart_rows) worn.insert(minute_of_day(r.lms));
  out.n_wearing_mins = static_cast<double>(worn.size());

  auto walks = find_walks(mins, p.walk_min_minutes, p.walk_min_steps);
  out.n_walks = static_cast<double>(walks.size());
  std::int64_t walk_steps = 0;
  std::int64_t walk_mins = 0;
  if (!walks.empty()) {
    std::vector<double> steps_per_walk, dur_per_walk;
    for (const auto& w : walks) {
      steps_per_walk.push_back(static_cast<double>(w.steps));
      dur_per_walk.push_back(static_cast<double>(w.len_min));
      walk_steps += w.steps;
      walk_mins += w.len_min;
    }
    out.max_steps_walk = vec_max(steps_per_walk);
    out.mean_steps_walk = vec_mean(steps_per_walk);
    out.max_walk_dur_mins = vec_max(dur_per_walk);
    out.mean_walk_dur_mins = vec_mean(dur_per_walk);
    out.steps_per_min_walk = static_cast<double>(walk_steps) / static_cast<double>(walk_mins);
  }
  out.n_mins_walk = static_cast<double>(walk_mins);
  out.n_steps_walk = static_cast<double>(walk_steps);
  out.max_consec_mins_over3 = max_consecutive_over(mins, 3);
  out.max_consec_mins_over30 = max_consecutive_over(mins, 30);
  return out;
}

// ---- taps ----

namespace {

// Session id per tap, or -1 when the tap falls outside every screen session.
// With no sessions given (no power data), fall back to gap-joined sessions.
std::vector<int> tap_sessions(const std::vector<TapRow>& taps,
                              const std::vector<ScreenSession>& sessions, double join_s) {
  std::vector<int> ids(taps.size(), -1);
  if (!sessions.empty()) {
    for (size_t i = 0; i < taps.size(); ++i) {
      for (size_t s = 0; s < sessions.size(); ++s) {
        if (taps[i].lms >= sessions[s].start_lms && taps[i].lms <= sessions[s].end_lms) {
          ids[i] = static_cast<int>(s);
          break;
        }
      }
    }
    return ids;
  }
  int cur = 0;
  for (size_t i = 0; i < taps.size(); ++i) {
    if (i > 0 &&
        static_cast<double>(taps[i].lms - taps[i - 1].lms) / 1000.0 > join_s)
      ++cur;
    ids[i] = cur;
  }
  return ids;
}

struct IntertapStats {
  double mx = kNan, mn = kNan, sd = kNan, mean = kNan, median = kNan;
};

IntertapStats intertap(const std::vector<double>& durs) {
  IntertapStats s;
  if (durs.empty()) return s;
  s.mx = vec_max(durs);
  s.mn = vec_min(durs);
  s.sd = vec_std(durs);
  s.mean = vec_mean(durs);
  s.median = vec_median(durs);
  return s;
}

}  // namespace

TapsHourly taps_hourly(const std::vector<TapRow>& day_rows,
                       const std::vector<ScreenSession>& sessions, std::int64_t day_start_lms,
                       int hour, const FeatureParams& p) {
  TapsHourly out{kNan, kNan, kNan, kNan, kNan, kNan};
  std::int64_t h0 = day_start_lms + static_cast<std::int64_t>(hour) * kMsPerHour;
  std::int64_t h1 = h0 + kMsPerHour;
  auto ids = tap_sessions(day_rows, sessions, p.tap_session_join_s);
  double count = 0;
  std::vector<double> durs;
  for (size_t i = 0; i < day_rows.size(); ++i) {
    if (day_rows[i].lms >= h0 && day_rows[i].lms < h1) ++count;
    if (i == 0) continue;
    // pair counts toward the hour containing both taps
    if (day_rows[i - 1].lms < h0 || day_rows[i].lms >= h1) continue;
    if (ids[i] < 0 || ids[i] != ids[i - 1]) continue;
    durs.push_back(static_cast<double>(day_rows[i].lms - day_rows[i - 1].lms) / 1000.0);
  }
  if (count == 0 && durs.empty()) return out;
  out.n_taps = count;
  auto s = intertap(durs);
  out.intertap_max_s = s.mx;
  out.intertap_min_s = s.mn;
  out.intertap_std_s = s.sd;
  out.intertap_mean_s = s.mean;
  out.intertap_median_s = s.median;
  return out;
}

TapsDaily taps_daily(const std::vector<TapRow>& day_rows,
                     const std::vector<ScreenSession>& sessions, const FeatureParams& p) {
  TapsDaily out{};
  out.n_taps = kNan;
  out.n_unique_apps = kNan;
  for (int g = 0; g < kAppGroupCount; ++g) out.n_taps_per_group[g] = kNan;
  out.intertap_max_s = out.intertap_min_s = out.intertap_std_s = out.intertap_mean_s =
      out.intertap_median_s = kNan;
  if (day_rows.empty()) return out;

  out.n_taps = static_cast<double>(day_rows.size());
  std::set<std::string> apps;
  double per_group[kAppGroupCount] = {0};
  for (const auto& r : day_rows) {
    apps.insert(r.package);
    per_group[static_cast<int>(r.group)] += 1;
  }
  out.n_unique_apps = static_cast<double>(apps.size());
  for (int g = 0; g < kAppGroupCount; ++g) out.n_taps_per_group[g] = per_group[g];

  auto ids = tap_sessions(day_rows, sessions, p.tap_session_join_s);
  std::vector<double> durs;
  for (size_t i = 1; i < day_rows.size(); ++i) {
    if (ids[i] < 0 || ids[i] != ids[i - 1]) continue;
    if (day_rows[i].group != AppGroup::social_messenger ||
        day_rows[i - 1].group != AppGroup::social_messenger)
      continue;
    durs.push_back(static_cast<double>(day_rows[i].lms - day_rows[i - 1].lms) / 1000.0);
  }
  auto s = intertap(durs);
  out.intertap_max_s = s.mx;
  out.intertap_min_s = s.mn;
  out.intertap_std_s = s.sd;
  out.intertap_mean_s = s.mean;
  out.intertap_median_s = s.median;
  return out;
}

// ---- messages / calls ----

MsgDaily msgs_daily(const std::vector<MsgRow>& rows) {
  MsgDaily out{kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan};
  if (rows.empty()) return out;
  double n_recv = 0, n_sent = 0, len_recv = 0, len_sent = 0;
  std::set<std::string> recv, sent;
  for (const auto& r : rows) {
    if (r.direction == "received") {
      ++n_recv;
      len_recv += static_cast<double>(r.length);
      recv.insert(r.contact);
    } else if (r.direction == "sent") {
      ++n_sent;
      len_sent += static_cast<double>(r.length);
      sent.insert(r.contact);
    }
  }
  double both = 0;
  for (const auto& c : recv)
    if (sent.count(c)) ++both;
  std::set<std::string> all(recv);
  all.insert(sent.begin(), sent.end());
  out.n_recv = n_recv;
  out.n_sent = n_sent;
  out.len_recv = len_recv;
  out.len_sent = len_sent;
  out.n_contacts_recv_only = static_cast<double>(recv.size()) - both;
  out.n_contacts_both = both;
  out.n_contacts_sent_only = static_cast<double>(sent.size()) - both;
  out.n_msgs_total = n_recv + n_sent;
  out.n_contacts_total = static_cast<double>(all.size());
  return out;
}

CallDaily calls_daily(const std::vector<CallRow>& rows) {
  CallDaily out{kNan, kNan, kNan, kNan, kNan};
  if (rows.empty()) return out;
  double in = 0, outg = 0, missed = 0, dur = 0;
  std::set<std::string> talked;
  for (const auto& r : rows) {
    if (r.type == "missed") {
      ++missed;
    } else if (r.direction == "incoming") {
      ++in;
    } else if (r.direction == "outgoing") {
      ++outg;
    }
    dur += r.duration_s;
    if (r.duration_s > 0) talked.insert(r.contact);
  }
  out.n_incoming = in;
  out.n_outgoing = outg;
  out.n_missed = missed;
  out.total_duration_s = dur;
  out.n_contacts_talked = static_cast<double>(talked.size());
  return out;
}

}  // namespace pheno
