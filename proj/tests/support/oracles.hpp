#pragma once

// Brute-force recomputations of every summary statistic, written straight
// from the definitions with no shared code (and deliberately different
// algorithms) so the production kernels can be checked against them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pheno/features.hpp"
#include "pheno/mobility.hpp"

namespace oracle {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr std::int64_t kMin = 60'000;
constexpr std::int64_t kHour = 3'600'000;
constexpr std::int64_t kDay = 86'400'000;

// ---- scalar statistics (long double, naive loops) ----

inline double o_mean(const std::vector<double>& v) {
  if (v.empty()) return kNan;
  long double s = 0;
  for (double x : v) s += x;
  return static_cast<double>(s / static_cast<long double>(v.size()));
}

inline double o_std_pop(const std::vector<double>& v) {
  if (v.empty()) return kNan;
  long double m = 0;
  for (double x : v) m += x;
  m /= static_cast<long double>(v.size());
  long double acc = 0;
  for (double x : v) acc += (x - m) * (x - m);
  return static_cast<double>(std::sqrt(static_cast<double>(acc / v.size())));
}

inline double o_max(const std::vector<double>& v) {
  if (v.empty()) return kNan;
  double m = v[0];
  for (double x : v) m = x > m ? x : m;
  return m;
}

inline double o_min(const std::vector<double>& v) {
  if (v.empty()) return kNan;
  double m = v[0];
  for (double x : v) m = x < m ? x : m;
  return m;
}

// Linear-interpolation quantile on the sorted sample with h = (n-1)q.
inline double o_quantile(std::vector<double> v, double q) {
  if (v.empty()) return kNan;
  std::sort(v.begin(), v.end());
  double h = (static_cast<double>(v.size()) - 1.0) * q;
  size_t lo = static_cast<size_t>(std::floor(h));
  size_t hi = static_cast<size_t>(std::ceil(h));
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline double o_median(const std::vector<double>& v) { return o_quantile(v, 0.5); }

// NaN-tolerant comparison: exact for NaN/NaN, tolerance elsewhere.
inline bool close(double a, double b, double rel = 1e-9) {
  if (std::isnan(a) && std::isnan(b)) return true;
  if (std::isnan(a) || std::isnan(b)) return false;
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= rel * scale;
}

// ---- walks: boolean mask + run-length encoding ----

struct OWalk {
  int start, len;
  std::int64_t steps;
};

inline std::vector<OWalk> o_walks(const std::vector<int>& mins, int min_minutes,
                                  int min_steps) {
  std::vector<bool> ok(mins.size());
  for (size_t i = 0; i < mins.size(); ++i) ok[i] = mins[i] >= min_steps;
  std::vector<OWalk> out;
  size_t i = 0;
  while (i < ok.size()) {
    if (!ok[i]) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < ok.size() && ok[j]) ++j;
    if (j - i >= static_cast<size_t>(min_minutes)) {
      std::int64_t total = 0;
      for (size_t k = i; k < j; ++k) total += mins[k];
      out.push_back({static_cast<int>(i), static_cast<int>(j - i), total});
    }
    i = j;
  }
  return out;
}

// ---- heart ----

inline std::vector<double> o_hrv(const std::vector<pheno::HeartRow>& rows, double gap_s) {
  std::vector<double> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    double dt = (rows[i].lms - rows[i - 1].lms) / 1000.0;
    if (dt > 0 && dt <= gap_s) out.push_back((rows[i].bpm - rows[i - 1].bpm) / dt);
  }
  return out;
}

inline pheno::HeartDaily o_heart_daily(const std::vector<pheno::HeartRow>& rows,
                                       const pheno::FeatureParams& p) {
  pheno::HeartDaily d{kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan};
  if (rows.empty()) return d;
  std::vector<double> bpm;
  for (const auto& r : rows) bpm.push_back(r.bpm);
  d.HR_max = o_max(bpm);
  d.HR_min = o_min(bpm);
  d.HR_std = o_std_pop(bpm);
  d.HR_mean = o_mean(bpm);
  d.HR_median = o_median(bpm);
  d.HR_q25 = o_quantile(bpm, 0.25);
  d.HR_q125 = o_quantile(bpm, 0.125);
  auto hrv = o_hrv(rows, p.hrv_max_gap_s);
  if (!hrv.empty()) {
    d.HRV_max = o_max(hrv);
    d.HRV_min = o_min(hrv);
    d.HRV_std = o_std_pop(hrv);
    std::vector<double> ab;
    for (double v : hrv) ab.push_back(std::fabs(v));
    d.absHRV_mean = o_mean(ab);
    d.absHRV_std = o_std_pop(ab);
  }
  return d;
}

inline pheno::HeartHourly o_heart_hourly(const std::vector<pheno::HeartRow>& rows,
                                         const pheno::FeatureParams& p) {
  pheno::HeartHourly h{kNan, kNan, kNan, kNan, kNan, kNan, kNan};
  if (rows.empty()) return h;
  std::vector<double> bpm;
  for (const auto& r : rows) bpm.push_back(r.bpm);
  h.HR_max = o_max(bpm);
  h.HR_min = o_min(bpm);
  h.HR_std = o_std_pop(bpm);
  h.HR_mean = o_mean(bpm);
  auto hrv = o_hrv(rows, p.hrv_max_gap_s);
  if (!hrv.empty()) {
    h.HRV_max = o_max(hrv);
    h.HRV_min = o_min(hrv);
    h.HRV_std = o_std_pop(hrv);
  }
  return h;
}

// ---- light ----

inline double o_high50(const std::vector<pheno::LightRow>& rows) {
  std::vector<double> raw;
  for (const auto& r : rows) raw.push_back(r.lux);
  std::sort(raw.begin(), raw.end());  // ascending, take from the back
  size_t take = (raw.size() + 1) / 2;
  long double s = 0;
  for (size_t i = raw.size() - take; i < raw.size(); ++i) s += raw[i];
  return static_cast<double>(s / static_cast<long double>(take));
}

inline pheno::LightDaily o_light_daily(const std::vector<pheno::LightRow>& rows) {
  pheno::LightDaily d{kNan, kNan, kNan};
  if (rows.empty()) return d;
  std::vector<double> lg;
  for (const auto& r : rows) lg.push_back(std::log1p(r.lux));
  d.max_log1p = o_max(lg);
  d.mean_log1p = o_mean(lg);
  d.high50 = o_high50(rows);
  return d;
}

inline pheno::LightHourly o_light_hourly(const std::vector<pheno::LightRow>& rows) {
  pheno::LightHourly h{kNan, kNan, kNan, kNan};
  if (rows.empty()) return h;
  std::vector<double> lg;
  for (const auto& r : rows) lg.push_back(std::log1p(r.lux));
  h.max_log1p = o_max(lg);
  h.mean_log1p = o_mean(lg);
  h.min_log1p = o_min(lg);
  h.high50 = o_high50(rows);
  return h;
}

// ---- accel ----

inline pheno::AccelHourly o_accel_hourly(const std::vector<pheno::AccelRow>& rows,
                                         const pheno::FeatureParams& p) {
  pheno::AccelHourly h{kNan, kNan, kNan, kNan, kNan};
  if (rows.empty()) return h;
  std::vector<double> mag;
  for (const auto& r : rows) mag.push_back(std::sqrt(r.x * r.x + r.y * r.y + r.z * r.z));
  h.L_max = o_max(mag);
  h.L_min = o_min(mag);
  h.L_std = o_std_pop(mag);
  h.L_mean = o_mean(mag);
  std::vector<double> rates;
  for (size_t i = 1; i < rows.size(); ++i) {
    double dt = (rows[i].lms - rows[i - 1].lms) / 1000.0;
    if (dt <= 0 || dt > p.accel_burst_gap_s) continue;
    double dx = std::fabs(rows[i].x - rows[i - 1].x);
    double dy = std::fabs(rows[i].y - rows[i - 1].y);
    double dz = std::fabs(rows[i].z - rows[i - 1].z);
    rates.push_back(std::max(dx, std::max(dy, dz)) / dt);
  }
  if (!rates.empty()) h.ddt_max = o_max(rates);
  return h;
}

// ---- accessibility ----

inline pheno::AccessibilityHourly o_accessibility_hourly(
    const std::vector<pheno::TokenRow>& rows) {
  pheno::AccessibilityHourly h{kNan, kNan, kNan, kNan};
  if (rows.empty()) return h;
  double kb = 0, del = 0;
  static const std::set<std::string> kKeyboard{"alpha", "num", "punct", "DELETE"};
  for (const auto& r : rows) {
    if (kKeyboard.count(r.token)) ++kb;
    if (r.token == "DELETE") ++del;
  }
  h.n_taps = static_cast<double>(rows.size());
  h.n_keyboard_taps = kb;
  h.n_delete_taps = del;
  h.delete_ratio = kb > 0 ? del / kb : kNan;
  return h;
}

// ---- power / screen sessions ----

inline std::vector<pheno::ScreenSession> o_screen_sessions(
    const std::vector<pheno::PowerRow>& rows, std::int64_t day_end) {
  std::vector<pheno::ScreenSession> out;
  bool open = false;
  std::int64_t t0 = 0;
  for (const auto& r : rows) {
    if (r.event == "screen_on" && !open) {
      open = true;
      t0 = r.lms;
    } else if (r.event == "screen_off" && open) {
      out.push_back({t0, r.lms});
      open = false;
    }
  }
  if (open) out.push_back({t0, day_end});
  return out;
}

inline pheno::PowerDaily o_power_daily(const std::vector<pheno::PowerRow>& rows,
                                       const std::vector<pheno::ScreenSession>& sessions) {
  pheno::PowerDaily d{kNan, kNan, kNan, kNan, kNan, kNan};
  if (rows.empty()) return d;
  double down = 0;
  for (const auto& r : rows)
    if (r.event == "power_down") ++down;
  d.n_power_down = down;
  d.n_screen_sessions = static_cast<double>(sessions.size());
  std::vector<double> durs;
  for (const auto& s : sessions) durs.push_back((s.end_lms - s.start_lms) / 1000.0);
  if (!durs.empty()) {
    d.max_screen_on_s = o_max(durs);
    d.min_screen_on_s = o_min(durs);
    d.std_screen_on_s = o_std_pop(durs);
    d.mean_screen_on_s = o_mean(durs);
  }
  return d;
}

inline pheno::PowerHourly o_power_hourly(const std::vector<pheno::PowerRow>& rows,
                                         const std::vector<pheno::ScreenSession>& sessions,
                                         std::int64_t day_start, int hour) {
  pheno::PowerHourly h{kNan, kNan};
  std::int64_t h0 = day_start + hour * kHour, h1 = h0 + kHour;
  double events = 0;
  bool any = false;
  for (const auto& r : rows) {
    if (r.lms >= h0 && r.lms < h1) {
      any = true;
      if (r.event == "screen_on" || r.event == "screen_off" || r.event == "power_down")
        ++events;
    }
  }
  double on_ms = 0;
  for (const auto& s : sessions) {
    double ov = static_cast<double>(std::min(s.end_lms, h1) - std::max(s.start_lms, h0));
    if (ov > 0) {
      on_ms += ov;
      any = true;
    }
  }
  if (!any) return h;
  h.screen_on_s = on_ms / 1000.0;
  h.n_power_events = events;
  return h;
}

// ---- sleep ----

inline pheno::SleepDaily o_sleep_daily(const std::vector<pheno::SleepRow>& segs,
                                       std::int64_t window_start,
                                       const pheno::FeatureParams& p) {
  pheno::SleepDaily d{kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan,
                      kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan};
  if (segs.empty()) return d;

  auto hrs_of = [](const pheno::SleepRow& s) { return s.duration_s / 3600.0; };
  auto end_of = [](const pheno::SleepRow& s) { return s.lms + s.duration_s * 1000LL; };

  double tot[4] = {0, 0, 0, 0};  // deep, light, rem, awake
  auto stage_idx = [](const std::string& st) {
    if (st == "deep") return 0;
    if (st == "light") return 1;
    if (st == "rem") return 2;
    return 3;
  };
  for (const auto& s : segs) tot[stage_idx(s.stage)] += hrs_of(s);
  d.total_deep_hrs = tot[0];
  d.total_light_hrs = tot[1];
  d.total_rem_hrs = tot[2];
  d.total_awake_hrs = tot[3];
  d.total_hrs = tot[0] + tot[1] + tot[2];

  // Group into bridged runs, collected up-front.
  std::vector<std::pair<size_t, size_t>> runs;  // [first, last]
  size_t first = 0;
  for (size_t i = 1; i <= segs.size(); ++i) {
    bool split = i == segs.size() ||
                 segs[i].lms - end_of(segs[i - 1]) > p.sleep_bridge_gap_min * 60'000LL;
    if (split) {
      runs.emplace_back(first, i - 1);
      first = i;
    }
  }
  // Longest span; first run wins ties.
  size_t best = 0;
  std::int64_t best_span = -1;
  for (size_t r = 0; r < runs.size(); ++r) {
    std::int64_t span = end_of(segs[runs[r].second]) - segs[runs[r].first].lms;
    if (span > best_span) {
      best_span = span;
      best = r;
    }
  }
  size_t a = runs[best].first, b = runs[best].second;
  std::int64_t m0 = segs[a].lms, m1 = end_of(segs[b]);
  double main_hrs = (m1 - m0) / 3600000.0;
  d.main_sleep_hrs = main_hrs;

  double mtot[4] = {0, 0, 0, 0};
  double n_awake = 0, n_long = 0;
  for (size_t i = a; i <= b; ++i) {
    int k = stage_idx(segs[i].stage);
    mtot[k] += hrs_of(segs[i]);
    if (k == 3) {
      ++n_awake;
      if (segs[i].duration_s >= 180) ++n_long;
    }
  }
  d.n_awake_main = n_awake;
  d.n_awake_long_main = n_long;
  if (main_hrs > 0) {
    d.ratio_deep = mtot[0] / main_hrs;
    d.ratio_light = mtot[1] / main_hrs;
    d.ratio_rem = mtot[2] / main_hrs;
    d.ratio_awake = mtot[3] / main_hrs;
    d.mean_efficiency = (main_hrs - mtot[3]) / main_hrs;
  }

  std::int64_t day0 = window_start >= 0 ? window_start / kDay
                                        : (window_start - kDay + 1) / kDay;
  std::int64_t bed_ref = day0 * kDay + p.sleep_ref_bed_min * kMin;
  std::int64_t wake_ref = (day0 + 1) * kDay + p.sleep_ref_wake_min * kMin;
  d.start_offset_hrs = (m0 - bed_ref) / 3600000.0;
  d.end_offset_hrs = (m1 - wake_ref) / 3600000.0;

  double lead = 0, trail = 0;
  size_t i = a;
  while (i <= b && segs[i].stage == "awake") lead += hrs_of(segs[i++]);
  bool all_awake = i > b;
  if (!all_awake) {
    size_t j = b;
    while (segs[j].stage == "awake") trail += hrs_of(segs[j--]);
  }
  d.time_to_asleep_hrs = lead;
  d.time_to_getup_hrs = all_awake ? 0.0 : trail;
  return d;
}

// ---- steps ----

inline pheno::StepsDaily o_steps_daily(const std::vector<pheno::StepsRow>& rows,
                                       const std::vector<pheno::HeartRow>& heart,
                                       const pheno::FeatureParams& p) {
  pheno::StepsDaily d{kNan, kNan, kNan, kNan, kNan, kNan, kNan,
                      kNan, kNan, kNan, kNan, kNan, kNan, kNan};
  if (rows.empty()) return d;
  std::map<int, std::int64_t> slot;
  for (const auto& r : rows) {
    std::int64_t md = ((r.lms % kDay) + kDay) % kDay;
    slot[static_cast<int>(md / kMin)] += r.steps;
  }
  std::int64_t total = 0, mx = 0;
  double with = 0;
  std::vector<int> mins(1440, 0);
  for (const auto& [m, v] : slot) {
    total += v;
    mx = std::max(mx, v);
    if (v > 0) ++with;
    if (m >= 0 && m < 1440) mins[static_cast<size_t>(m)] = static_cast<int>(v);
  }
  d.n_steps = static_cast<double>(total);
  d.n_mins_with_steps = with;
  d.max_steps_in_min = static_cast<double>(mx);

  std::set<std::int64_t> worn;
  for (const auto& h : heart) worn.insert((((h.lms % kDay) + kDay) % kDay) / kMin);
  d.n_wearing_mins = static_cast<double>(worn.size());

  auto walks = o_walks(mins, p.walk_min_minutes, p.walk_min_steps);
  d.n_walks = static_cast<double>(walks.size());
  std::int64_t wsteps = 0, wmins = 0;
  std::vector<double> per_steps, per_dur;
  for (const auto& w : walks) {
    wsteps += w.steps;
    wmins += w.len;
    per_steps.push_back(static_cast<double>(w.steps));
    per_dur.push_back(static_cast<double>(w.len));
  }
  if (!walks.empty()) {
    d.max_steps_walk = o_max(per_steps);
    d.mean_steps_walk = o_mean(per_steps);
    d.max_walk_dur_mins = o_max(per_dur);
    d.mean_walk_dur_mins = o_mean(per_dur);
    d.steps_per_min_walk = static_cast<double>(wsteps) / static_cast<double>(wmins);
  }
  d.n_mins_walk = static_cast<double>(wmins);
  d.n_steps_walk = static_cast<double>(wsteps);
  auto consec = [&](int thr) {
    int best = 0, run = 0;
    for (int v : mins) {
      run = v > thr ? run + 1 : 0;
      best = std::max(best, run);
    }
    return static_cast<double>(best);
  };
  d.max_consec_mins_over3 = consec(3);
  d.max_consec_mins_over30 = consec(30);
  return d;
}

inline pheno::StepsHourly o_steps_hourly(const std::vector<pheno::StepsRow>& rows) {
  pheno::StepsHourly h{kNan, kNan, kNan, kNan};
  if (rows.empty()) return h;
  std::map<int, std::int64_t> slot;
  for (const auto& r : rows)
    slot[static_cast<int>((((r.lms % kDay) + kDay) % kDay) / kMin)] += r.steps;
  std::int64_t total = 0, mx = 0;
  double with = 0;
  for (const auto& [m, v] : slot) {
    total += v;
    mx = std::max(mx, v);
    if (v > 0) ++with;
  }
  h.n_steps = static_cast<double>(total);
  h.max_steps_in_min = static_cast<double>(mx);
  h.n_mins_with_steps = with;
  h.mean_steps_per_min = static_cast<double>(total) / static_cast<double>(slot.size());
  return h;
}

// ---- taps ----

inline std::vector<int> o_tap_session_ids(const std::vector<pheno::TapRow>& taps,
                                          const std::vector<pheno::ScreenSession>& sessions,
                                          double join_s) {
  std::vector<int> ids(taps.size(), -1);
  if (sessions.empty()) {
    int cur = 0;
    for (size_t i = 0; i < taps.size(); ++i) {
      if (i > 0 && (taps[i].lms - taps[i - 1].lms) / 1000.0 > join_s) ++cur;
      ids[i] = cur;
    }
    return ids;
  }
  for (size_t i = 0; i < taps.size(); ++i)
    for (size_t s = 0; s < sessions.size(); ++s)
      if (taps[i].lms >= sessions[s].start_lms && taps[i].lms <= sessions[s].end_lms) {
        ids[i] = static_cast<int>(s);
        break;
      }
  return ids;
}

inline pheno::TapsDaily o_taps_daily(const std::vector<pheno::TapRow>& rows,
                                     const std::vector<pheno::ScreenSession>& sessions,
                                     const pheno::FeatureParams& p) {
  pheno::TapsDaily d{};
  d.n_taps = d.n_unique_apps = kNan;
  for (int g = 0; g < pheno::kAppGroupCount; ++g) d.n_taps_per_group[g] = kNan;
  d.intertap_max_s = d.intertap_min_s = d.intertap_std_s = d.intertap_mean_s =
      d.intertap_median_s = kNan;
  if (rows.empty()) return d;
  d.n_taps = static_cast<double>(rows.size());
  std::set<std::string> apps;
  for (const auto& r : rows) apps.insert(r.package);
  d.n_unique_apps = static_cast<double>(apps.size());
  for (int g = 0; g < pheno::kAppGroupCount; ++g) {
    double c = 0;
    for (const auto& r : rows)
      if (static_cast<int>(r.group) == g) ++c;
    d.n_taps_per_group[g] = c;
  }
  auto ids = o_tap_session_ids(rows, sessions, p.tap_session_join_s);
  std::vector<double> durs;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (ids[i] < 0 || ids[i] != ids[i - 1]) continue;
    if (rows[i].group != pheno::AppGroup::social_messenger ||
        rows[i - 1].group != pheno::AppGroup::social_messenger)
      continue;
    durs.push_back((rows[i].lms - rows[i - 1].lms) / 1000.0);
  }
  if (!durs.empty()) {
    d.intertap_max_s = o_max(durs);
    d.intertap_min_s = o_min(durs);
    d.intertap_std_s = o_std_pop(durs);
    d.intertap_mean_s = o_mean(durs);
    d.intertap_median_s = o_median(durs);
  }
  return d;
}

inline pheno::TapsHourly o_taps_hourly(const std::vector<pheno::TapRow>& rows,
                                       const std::vector<pheno::ScreenSession>& sessions,
                                       std::int64_t day_start, int hour,
                                       const pheno::FeatureParams& p) {
  pheno::TapsHourly h{kNan, kNan, kNan, kNan, kNan, kNan};
  std::int64_t h0 = day_start + hour * kHour, h1 = h0 + kHour;
  auto ids = o_tap_session_ids(rows, sessions, p.tap_session_join_s);
  double count = 0;
  std::vector<double> durs;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].lms >= h0 && rows[i].lms < h1) ++count;
    if (i == 0) continue;
    if (rows[i - 1].lms < h0 || rows[i].lms >= h1) continue;
    if (ids[i] < 0 || ids[i] != ids[i - 1]) continue;
    durs.push_back((rows[i].lms - rows[i - 1].lms) / 1000.0);
  }
  if (count == 0 && durs.empty()) return h;
  h.n_taps = count;
  if (!durs.empty()) {
    h.intertap_max_s = o_max(durs);
    h.intertap_min_s = o_min(durs);
    h.intertap_std_s = o_std_pop(durs);
    h.intertap_mean_s = o_mean(durs);
    h.intertap_median_s = o_median(durs);
  }
  return h;
}

// ---- messages / calls ----

inline pheno::MsgDaily o_msgs_daily(const std::vector<pheno::MsgRow>& rows) {
  pheno::MsgDaily d{kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan};
  if (rows.empty()) return d;
  std::map<std::string, std::pair<bool, bool>> contact;  // recv, sent
  double nr = 0, ns = 0, lr = 0, ls = 0;
  for (const auto& r : rows) {
    if (r.direction == "received") {
      ++nr;
      lr += static_cast<double>(r.length);
      contact[r.contact].first = true;
    } else if (r.direction == "sent") {
      ++ns;
      ls += static_cast<double>(r.length);
      contact[r.contact].second = true;
    }
  }
  double ro = 0, so = 0, both = 0;
  for (const auto& [c, f] : contact) {
    if (f.first && f.second) ++both;
    else if (f.first) ++ro;
    else ++so;
  }
  d.n_recv = nr;
  d.n_sent = ns;
  d.len_recv = lr;
  d.len_sent = ls;
  d.n_contacts_recv_only = ro;
  d.n_contacts_both = both;
  d.n_contacts_sent_only = so;
  d.n_msgs_total = nr + ns;
  d.n_contacts_total = static_cast<double>(contact.size());
  return d;
}

inline pheno::CallDaily o_calls_daily(const std::vector<pheno::CallRow>& rows) {
  pheno::CallDaily d{kNan, kNan, kNan, kNan, kNan};
  if (rows.empty()) return d;
  double in = 0, out = 0, miss = 0, dur = 0;
  std::map<std::string, double> talk;
  for (const auto& r : rows) {
    if (r.type == "missed") ++miss;
    else if (r.direction == "incoming") ++in;
    else if (r.direction == "outgoing") ++out;
    dur += r.duration_s;
    talk[r.contact] += r.duration_s > 0 ? 1 : 0;
  }
  double talked = 0;
  for (const auto& [c, n] : talk)
    if (n > 0) ++talked;
  d.n_incoming = in;
  d.n_outgoing = out;
  d.n_missed = miss;
  d.total_duration_s = dur;
  d.n_contacts_talked = talked;
  return d;
}

// ---- mobility ----

inline double o_dist(double ax, double ay, double bx, double by) {
  return std::hypot(ax - bx, ay - by);
}

// Pause scan with the centroid recomputed from scratch at every extension.
inline pheno::PauseFlightTrace o_pauses_flights(const std::vector<pheno::GpsSample>& s,
                                                const pheno::MobilityParams& p) {
  pheno::PauseFlightTrace out;
  size_t i = 0;
  while (i < s.size()) {
    size_t j = i + 1;
    while (j < s.size()) {
      long double sx = 0, sy = 0;
      for (size_t k = i; k < j; ++k) {
        sx += s[k].x;
        sy += s[k].y;
      }
      double cx = static_cast<double>(sx / static_cast<long double>(j - i));
      double cy = static_cast<double>(sy / static_cast<long double>(j - i));
      if (o_dist(s[j].x, s[j].y, cx, cy) > p.pause_radius_m) break;
      ++j;
    }
    bool ok = (j - i) >= 2 && (s[j - 1].lms - s[i].lms) / 1000.0 >= p.pause_min_duration_s;
    if (ok) {
      long double sx = 0, sy = 0;
      for (size_t k = i; k < j; ++k) {
        sx += s[k].x;
        sy += s[k].y;
      }
      out.pauses.push_back({static_cast<double>(sx / static_cast<long double>(j - i)),
                            static_cast<double>(sy / static_cast<long double>(j - i)),
                            s[i].lms, s[j - 1].lms});
      i = j;
    } else {
      ++i;
    }
  }
  for (size_t k = 1; k < out.pauses.size(); ++k) {
    const auto& A = out.pauses[k - 1];
    const auto& B = out.pauses[k];
    out.flights.push_back({A.cx, A.cy, B.cx, B.cy, o_dist(A.cx, A.cy, B.cx, B.cy),
                           (B.start_lms - A.end_lms) / 1000.0, A.end_lms});
  }
  return out;
}

inline pheno::MobilityDay o_daily_mobility(const std::vector<pheno::GpsSample>& day,
                                           const pheno::PauseFlightTrace& trace,
                                           const pheno::HomePoint& home,
                                           std::int64_t day_start,
                                           const pheno::MobilityParams& p) {
  pheno::MobilityDay m{kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan,
                       kNan, kNan, kNan, kNan, 1440, kNan, kNan};
  if (day.empty()) return m;
  int observed = 0, at_home = 0;
  for (int minute = 0; minute < 1440; ++minute) {
    std::int64_t m0 = day_start + minute * kMin, m1 = m0 + kMin;
    double px = kNan, py = kNan;
    for (const auto& pa : trace.pauses)
      if (pa.start_lms < m1 && pa.end_lms > m0) {
        px = pa.cx;
        py = pa.cy;
        break;
      }
    if (std::isnan(px)) {
      for (const auto& s : day)
        if (s.lms >= m0 && s.lms < m1) {
          px = s.x;
          py = s.y;
          break;
        }
    }
    if (!std::isnan(px)) {
      ++observed;
      if (o_dist(px, py, home.x, home.y) <= p.home_radius_m) ++at_home;
    }
  }
  m.Hometime_mins = at_home;
  m.MinsMissing = 1440 - observed;

  long double sx = 0, sy = 0;
  for (const auto& s : day) {
    sx += s.x;
    sy += s.y;
  }
  double cx = static_cast<double>(sx / static_cast<long double>(day.size()));
  double cy = static_cast<double>(sy / static_cast<long double>(day.size()));
  long double acc = 0;
  double max_home = 0, diam = 0;
  for (const auto& s : day) {
    acc += (s.x - cx) * (s.x - cx) + (s.y - cy) * (s.y - cy);
    max_home = std::max(max_home, o_dist(s.x, s.y, home.x, home.y));
  }
  for (size_t i = 0; i < day.size(); ++i)
    for (size_t j = i + 1; j < day.size(); ++j)
      diam = std::max(diam, o_dist(day[i].x, day[i].y, day[j].x, day[j].y));
  m.RoG_m = std::sqrt(static_cast<double>(acc / static_cast<long double>(day.size())));
  m.MaxHomeDist_m = max_home;
  m.MaxDiam_m = diam;

  m.NumFlights = static_cast<double>(trace.flights.size());
  std::vector<double> lens, durs;
  double travelled = 0;
  for (const auto& f : trace.flights) {
    lens.push_back(f.length_m);
    durs.push_back(f.duration_s);
    travelled += f.length_m;
  }
  if (!lens.empty()) {
    m.AvgFlightLen_m = o_mean(lens);
    m.StdFlightLen_m = o_std_pop(lens);
    m.AvgFlightDur_s = o_mean(durs);
    m.StdFlightDur_s = o_std_pop(durs);
    m.FirstMoveTime_mins =
        static_cast<double>(trace.flights.front().start_lms - day_start) / 60000.0;
  }
  m.DistTravelled_m = trace.flights.empty() ? 0.0 : travelled;

  double pause_ms = 0, flight_ms = 0;
  for (const auto& pa : trace.pauses)
    pause_ms += static_cast<double>(pa.end_lms - pa.start_lms);
  for (const auto& f : trace.flights) flight_ms += f.duration_s * 1000.0;
  if (pause_ms + flight_ms > 0) m.ProbPause = pause_ms / (pause_ms + flight_ms);

  auto clusters = pheno::cluster_pauses(trace.pauses, p.sigloc_merge_m);
  std::vector<double> dwell;
  for (const auto& c : clusters)
    if (c.dwell_ms >= p.sigloc_min_dwell_min * 60000.0) dwell.push_back(c.dwell_ms);
  if (dwell.empty() && !clusters.empty()) {
    double best = 0;
    for (const auto& c : clusters) best = std::max(best, c.dwell_ms);
    dwell.push_back(best);
  }
  m.SigLocsVisited = static_cast<double>(dwell.size());
  if (!dwell.empty()) {
    double total = 0, ent = 0;
    for (double d : dwell) total += d;
    for (double d : dwell) {
      double f = d / total;
      if (f > 0) ent -= f * std::log(f);
    }
    m.SigLocEntropy = ent;
  }
  return m;
}

// ---- statistics ----

// Exact Wilcoxon two-sided p by enumerating all 2^n sign assignments.
inline double o_wilcoxon_enum_p(const std::vector<double>& diffs) {
  std::vector<double> nz;
  for (double d : diffs)
    if (d != 0) nz.push_back(d);
  size_t n = nz.size();
  std::vector<double> av;
  for (double d : nz) av.push_back(std::fabs(d));
  // midranks
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return av[a] < av[b]; });
  std::vector<double> rank(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && av[order[j]] == av[order[i]]) ++j;
    double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (size_t k = i; k < j; ++k) rank[order[k]] = r;
    i = j;
  }
  double total = 0;
  for (double r : rank) total += r;
  double w_plus = 0;
  for (size_t k = 0; k < n; ++k)
    if (nz[k] > 0) w_plus += rank[k];
  double w_obs = std::min(w_plus, total - w_plus);

  std::uint64_t count = 0, cases = 1ULL << n;
  for (std::uint64_t mask = 0; mask < cases; ++mask) {
    double wp = 0;
    for (size_t k = 0; k < n; ++k)
      if (mask & (1ULL << k)) wp += rank[k];
    double w = std::min(wp, total - wp);
    if (w <= w_obs + 1e-12) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(cases);
}

inline double o_wilcoxon_enum_w(const std::vector<double>& diffs) {
  std::vector<double> nz;
  for (double d : diffs)
    if (d != 0) nz.push_back(d);
  std::vector<double> av;
  for (double d : nz) av.push_back(std::fabs(d));
  size_t n = nz.size();
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return av[a] < av[b]; });
  std::vector<double> rank(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && av[order[j]] == av[order[i]]) ++j;
    double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (size_t k = i; k < j; ++k) rank[order[k]] = r;
    i = j;
  }
  double total = 0, w_plus = 0;
  for (double r : rank) total += r;
  for (size_t k = 0; k < n; ++k)
    if (nz[k] > 0) w_plus += rank[k];
  return std::min(w_plus, total - w_plus);
}

// Regularized incomplete beta at long-double precision (Lentz continued
// fraction, tighter epsilon than the production double version).
inline long double o_incbeta(long double a, long double b, long double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  if (x > (a + 1) / (a + b + 2)) return 1 - o_incbeta(b, a, 1 - x);
  long double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  long double front = std::exp(std::log(x) * a + std::log(1 - x) * b - lbeta) / a;
  long double f = 1, c = 1, d = 0;
  for (int m = 0; m <= 400; ++m) {
    long double numerator;
    if (m == 0) numerator = 1;
    else if (m % 2 == 0) {
      long double k = m / 2.0L;
      numerator = k * (b - k) * x / ((a + 2 * k - 1) * (a + 2 * k));
    } else {
      long double k = (m - 1) / 2.0L;
      numerator = -((a + k) * (a + b + k) * x) / ((a + 2 * k) * (a + 2 * k + 1));
    }
    d = 1 + numerator * d;
    if (std::fabs(d) < 1e-300L) d = 1e-300L;
    d = 1 / d;
    c = 1 + numerator / c;
    if (std::fabs(c) < 1e-300L) c = 1e-300L;
    f *= c * d;
    if (std::fabs(1 - c * d) < 1e-18L) break;
  }
  return front * (f - 1);
}

// Paired t two-sided p at long-double precision.
inline double o_paired_t_p(const std::vector<double>& diffs) {
  size_t n = diffs.size();
  long double mean = 0;
  for (double d : diffs) mean += d;
  mean /= static_cast<long double>(n);
  long double ss = 0;
  for (double d : diffs) ss += (d - mean) * (d - mean);
  long double sd = std::sqrt(ss / static_cast<long double>(n - 1));
  long double t = mean / (sd / std::sqrt(static_cast<long double>(n)));
  long double nu = static_cast<long double>(n - 1);
  long double x = nu / (nu + t * t);
  return static_cast<double>(o_incbeta(nu / 2, 0.5L, x));
}

}  // namespace oracle
