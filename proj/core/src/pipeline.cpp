#include "pheno/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string_view>

#include "pheno/appgroups.hpp"
#include "pheno/csv.hpp"
#include "pheno/error.hpp"
#include "pheno/features.hpp"
#include "pheno/gzio.hpp"
#include "pheno/manifest.hpp"
#include "pheno/mobility.hpp"
#include "pheno/records.hpp"
#include "pheno/time.hpp"

namespace pheno {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

template <typename F>
void for_each_line(std::string_view text, F&& fn) {
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      fn(text.substr(pos));
      break;
    }
    fn(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
}

int split_sv(std::string_view line, std::string_view* out, int max_fields) {
  int n = 0;
  size_t pos = 0;
  while (n < max_fields) {
    size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      out[n++] = line.substr(pos);
      return n;
    }
    out[n++] = line.substr(pos, comma - pos);
    pos = comma + 1;
  }
  return n;
}

size_t count_fields(std::string_view line) {
  return static_cast<size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

fs::file_time_type mtime(const fs::path& p) { return fs::last_write_time(p); }

// True when every output exists and none is older than the newest input.
bool up_to_date(const std::vector<fs::path>& outputs, const std::vector<fs::path>& inputs) {
  fs::file_time_type newest_in = fs::file_time_type::min();
  for (const auto& in : inputs) newest_in = std::max(newest_in, mtime(in));
  for (const auto& out : outputs) {
    if (!fs::exists(out)) return false;
    if (mtime(out) < newest_in) return false;
  }
  return true;
}

// ------------------------------------------------------------ stages 1-2

StageReport stage_decrypt(const StudyLayout& layout, const StudyConfig&) {
  StageReport rep;
  rep.stage = 1;
  for (const auto& pid : list_dirs(layout.raw_dir())) {
    fs::path key_file = layout.keystore_dir() / (pid + ".key");
    Bytes priv;
    if (fs::exists(key_file)) priv = from_hex(read_file(key_file));
    for (const auto& kind : list_dirs(layout.raw_participant(pid))) {
      for (const auto& name : list_files(layout.raw_kind(pid, kind))) {
        if (!ends_with(name, kChunkExtension)) continue;
        std::string plain_name = name.substr(0, name.size() - std::string(kChunkExtension).size());
        fs::path out = layout.stage_study(1) / pid / kind / plain_name;
        if (fs::exists(out)) continue;
        ++rep.files_in;
        if (priv.empty()) continue;  // no key on this box: leave for later
        try {
          Bytes plaintext = decrypt_chunk(read_file_bytes(layout.raw_kind(pid, kind) / name), priv);
          write_file_atomic(out, plaintext);
          ++rep.files_out;
        } catch (const Error&) {
          // corrupt or foreign chunk: skip, visible as files_in > files_out
        }
      }
    }
  }
  return rep;
}

StageReport stage_patch(const StudyLayout& layout, const StudyConfig& cfg) {
  StageReport rep;
  rep.stage = 2;
  fs::path in_root = layout.stage_study(1);
  for (const auto& pid : list_dirs(in_root)) {
    for (const auto& kind : list_dirs(in_root / pid)) {
      for (const auto& name : list_files(in_root / pid / kind)) {
        fs::path out = layout.stage_study(2) / pid / kind / name;
        if (fs::exists(out)) continue;
        ++rep.files_in;
        write_file_atomic(out, patch_csv_text(read_file(in_root / pid / kind / name),
                                              cfg.ts_patch_threshold));
        ++rep.files_out;
      }
    }
  }
  return rep;
}

// ------------------------------------------------------------ stage 3

StageReport stage_concat(const StudyLayout& layout, const StudyConfig&) {
  StageReport rep;
  rep.stage = 3;
  fs::path in_root = layout.stage_study(2);
  for (const auto& pid : list_dirs(in_root)) {
    for (const auto& kind : list_dirs(in_root / pid)) {
      Kind k;
      try {
        k = kind_from_name(kind);
      } catch (const Error&) {
        continue;
      }
      fs::path dir = in_root / pid / kind;
      std::vector<fs::path> inputs;
      for (const auto& name : list_files(dir)) inputs.push_back(dir / name);
      if (inputs.empty()) continue;
      fs::path out = layout.stage_study(3) / pid / (kind + ".csv");
      if (up_to_date({out}, inputs)) continue;
      rep.files_in += static_cast<std::int64_t>(inputs.size());

      const size_t expected = kind_header(k).size();
      std::vector<std::string> bufs;
      bufs.reserve(inputs.size());
      std::vector<std::pair<std::int64_t, std::string_view>> rows;
      for (const auto& f : inputs) {
        bufs.push_back(read_file(f));
        bool first = true;
        for_each_line(bufs.back(), [&](std::string_view line) {
          if (first) {
            first = false;
            return;
          }
          if (line.empty()) return;
          if (count_fields(line) != expected) {
            ++rep.rows_dropped;
            return;
          }
          std::int64_t ts;
          if (!try_parse_i64(line.substr(0, line.find(',')), ts)) {
            ++rep.rows_dropped;
            return;
          }
          rows.emplace_back(ts, line);
        });
      }
      std::sort(rows.begin(), rows.end());

      std::string text;
      text.reserve(rows.size() * 24 + 64);
      auto header = kind_header(k);
      for (size_t i = 0; i < header.size(); ++i) {
        if (i) text += ',';
        text += header[i];
      }
      text += '\n';
      std::string_view prev{};
      for (const auto& [ts, line] : rows) {
        (void)ts;
        if (line == prev) {
          ++rep.duplicates_removed;
          continue;
        }
        text.append(line);
        text += '\n';
        prev = line;
      }
      write_file_atomic(out, text);
      ++rep.files_out;
    }
  }
  return rep;
}

// ------------------------------------------------------------ stage 4

StageReport stage_fix(const StudyLayout& layout, const StudyConfig& cfg) {
  StageReport rep;
  rep.stage = 4;
  fs::path in_root = layout.stage_study(3);
  for (const auto& pid : list_dirs(in_root)) {
    for (const auto& name : list_files(in_root / pid)) {
      fs::path in = in_root / pid / name;
      fs::path out = layout.stage_study(4) / pid / name;
      if (up_to_date({out}, {in})) continue;
      ++rep.files_in;
      std::string kind = name.substr(0, name.find('.'));
      std::string text = read_file(in);
      if (kind == "light") {
        std::string fixed;
        fixed.reserve(text.size());
        bool first = true;
        for_each_line(text, [&](std::string_view line) {
          if (first) {
            first = false;
            fixed.append(line);
            fixed += '\n';
            return;
          }
          if (line.empty()) return;
          std::string_view f[3];
          if (split_sv(line, f, 3) != 3) {
            ++rep.rows_dropped;
            return;
          }
          double lux;
          if (!try_parse_f64(f[2], lux)) {
            ++rep.rows_dropped;
            return;
          }
          double clamped = std::clamp(lux, 0.0, cfg.light_clamp_max);
          if (clamped == lux) {
            fixed.append(line);
          } else {
            fixed.append(f[0]);
            fixed += ',';
            fixed.append(f[1]);
            fixed += ',';
            append_f64(fixed, clamped);
          }
          fixed += '\n';
        });
        write_file_atomic(out, fixed);
      } else if (kind == "tapsLog") {
        std::string fixed;
        fixed.reserve(text.size() + text.size() / 2);
        bool first = true;
        for_each_line(text, [&](std::string_view line) {
          if (line.empty()) return;
          if (first) {
            first = false;
            fixed.append(line);
            fixed += ",app_group\n";
            return;
          }
          std::string_view f[4];
          if (split_sv(line, f, 4) != 4) {
            ++rep.rows_dropped;
            return;
          }
          fixed.append(line);
          fixed += ',';
          fixed += app_group_name(classify_app(std::string(f[2])));
          fixed += '\n';
        });
        write_file_atomic(out, fixed);
      } else {
        write_file_atomic(out, text);
      }
      ++rep.files_out;
    }
  }
  return rep;
}

// ------------------------------------------------------------ stage 5

struct KindData {
  std::vector<AccelRow> accel;
  std::vector<TokenRow> access;
  std::vector<CallRow> calls, voip;
  std::vector<GpsSample> gps;
  std::vector<HeartRow> heart;
  std::vector<LightRow> light;
  std::vector<PowerRow> power;
  std::vector<SleepRow> sleep;
  std::vector<MsgRow> msgs, texts;
  std::vector<StepsRow> steps;
  std::vector<TapRow> taps;
};

AppGroup group_from_name(std::string_view name) {
  for (int g = 0; g < kAppGroupCount; ++g)
    if (name == app_group_name(static_cast<AppGroup>(g))) return static_cast<AppGroup>(g);
  return AppGroup::android_system;
}

// Parses one stage-4 table into typed rows on the local-ms axis.
void load_kind(Kind k, std::string_view text, KindData& data, std::int64_t& rows_dropped) {
  bool first = true;
  for_each_line(text, [&](std::string_view line) {
    if (first) {
      first = false;
      return;
    }
    if (line.empty()) return;
    std::string_view f[8];
    int n = split_sv(line, f, 8);
    std::int64_t ts, tz;
    if (n < 3 || !try_parse_i64(f[0], ts) || !try_parse_i64(f[1], tz)) {
      ++rows_dropped;
      return;
    }
    std::int64_t lms = local_ms(ts, static_cast<int>(tz));
    auto bad = [&] { ++rows_dropped; };
    switch (k) {
      case Kind::accel: {
        double x, y, z;
        if (n == 5 && try_parse_f64(f[2], x) && try_parse_f64(f[3], y) && try_parse_f64(f[4], z))
          data.accel.push_back({lms, x, y, z});
        else
          bad();
        break;
      }
      case Kind::accessibilityLog:
        if (n == 3)
          data.access.push_back({lms, std::string(f[2])});
        else
          bad();
        break;
      case Kind::callLog:
      case Kind::sociabilityCallLog: {
        double dur;
        if (n == 6 && try_parse_f64(f[3], dur)) {
          CallRow row{lms, std::string(f[2]), dur, std::string(f[4]), std::string(f[5])};
          (k == Kind::callLog ? data.calls : data.voip).push_back(std::move(row));
        } else {
          bad();
        }
        break;
      }
      case Kind::gps: {
        double lat, lon;
        if (n == 5 && try_parse_f64(f[2], lat) && try_parse_f64(f[3], lon)) {
          PlanarPoint pt = project(lat, lon);
          data.gps.push_back({lms, pt.x, pt.y});
        } else {
          bad();
        }
        break;
      }
      case Kind::heart: {
        double bpm;
        if (n == 3 && try_parse_f64(f[2], bpm))
          data.heart.push_back({lms, bpm});
        else
          bad();
        break;
      }
      case Kind::light: {
        double lux;
        if (n == 3 && try_parse_f64(f[2], lux))
          data.light.push_back({lms, lux});
        else
          bad();
        break;
      }
      case Kind::powerState:
        if (n == 3)
          data.power.push_back({lms, std::string(f[2])});
        else
          bad();
        break;
      case Kind::sleep: {
        std::int64_t dur;
        if (n == 4 && try_parse_i64(f[3], dur))
          data.sleep.push_back({lms, std::string(f[2]), static_cast<int>(dur)});
        else
          bad();
        break;
      }
      case Kind::sociabilityLog:
      case Kind::textsLog: {
        std::int64_t len;
        if (n == 6 && try_parse_i64(f[4], len)) {
          MsgRow row{lms, std::string(f[2]), std::string(f[3]), len};
          (k == Kind::sociabilityLog ? data.msgs : data.texts).push_back(std::move(row));
        } else {
          bad();
        }
        break;
      }
      case Kind::steps: {
        std::int64_t v;
        if (n == 3 && try_parse_i64(f[2], v))
          data.steps.push_back({lms, static_cast<int>(v)});
        else
          bad();
        break;
      }
      case Kind::tapsLog:
        // stage 4 appended app_group as the 5th column
        if (n == 5)
          data.taps.push_back({lms, std::string(f[2]), group_from_name(f[4])});
        else
          bad();
        break;
    }
  });
}

template <typename Row>
std::vector<Row> slice(const std::vector<Row>& rows, std::int64_t lo_lms, std::int64_t hi_lms) {
  auto lo = std::lower_bound(rows.begin(), rows.end(), lo_lms,
                             [](const Row& r, std::int64_t t) { return r.lms < t; });
  auto hi = std::lower_bound(lo, rows.end(), hi_lms,
                             [](const Row& r, std::int64_t t) { return r.lms < t; });
  return std::vector<Row>(lo, hi);
}

// Family tables are built day by day; `fill` appends each manifest column
// of the family for one day, in manifest order.
using FamilyFill = std::function<void(std::int64_t day, std::vector<double>& out)>;

void write_family(const StudyLayout& layout, const std::string& pid, const std::string& family,
                  std::int64_t day_lo, std::int64_t day_hi, const FamilyFill& fill,
                  StageReport& rep) {
  const auto& manifest = default_manifest();
  std::string text = "date";
  for (const auto& e : manifest.entries)
    if (e.family == family) {
      text += ',';
      text += e.name;
    }
  text += '\n';
  std::vector<double> vals;
  for (std::int64_t d = day_lo; d <= day_hi; ++d) {
    vals.clear();
    fill(d, vals);
    text += format_day(civil_from_days(d));
    for (double v : vals) {
      text += ',';
      append_cell(text, v);
    }
    text += '\n';
  }
  write_file_atomic(layout.stage_study(5) / pid / (family + ".csv.gz"), gzip_compress(text));
  ++rep.files_out;
}

void summarize_participant(const StudyLayout& layout, const StudyConfig& cfg,
                           const std::string& pid, StageReport& rep) {
  fs::path in_dir = layout.stage_study(4) / pid;
  KindData data;
  for (const auto& name : list_files(in_dir)) {
    std::string kind = name.substr(0, name.find('.'));
    Kind k;
    try {
      k = kind_from_name(kind);
    } catch (const Error&) {
      continue;
    }
    ++rep.files_in;
    load_kind(k, read_file(in_dir / name), data, rep.rows_dropped);
  }
  auto sort_by_lms = [](auto& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.lms < b.lms; });
  };
  sort_by_lms(data.accel);
  sort_by_lms(data.access);
  sort_by_lms(data.calls);
  sort_by_lms(data.voip);
  sort_by_lms(data.gps);
  sort_by_lms(data.heart);
  sort_by_lms(data.light);
  sort_by_lms(data.power);
  sort_by_lms(data.sleep);
  sort_by_lms(data.msgs);
  sort_by_lms(data.texts);
  sort_by_lms(data.steps);
  sort_by_lms(data.taps);

  const FeatureParams fp = feature_params(cfg);
  const MobilityParams mp = mobility_params(cfg);

  // Sleep segments keyed by the window day they belong to.
  std::map<std::int64_t, std::vector<SleepRow>> sleep_by_day;
  for (const auto& s : data.sleep)
    sleep_by_day[sleep_window_day(s.lms, fp.sleep_window_cut_min)].push_back(s);

  // Observed span across every kind (sleep via its window labels).
  std::int64_t day_lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t day_hi = std::numeric_limits<std::int64_t>::min();
  auto cover = [&](std::int64_t day) {
    day_lo = std::min(day_lo, day);
    day_hi = std::max(day_hi, day);
  };
  auto cover_rows = [&](const auto& rows) {
    if (rows.empty()) return;
    cover(floor_div(rows.front().lms, kMsPerDay));
    cover(floor_div(rows.back().lms, kMsPerDay));
  };
  cover_rows(data.accel);
  cover_rows(data.access);
  cover_rows(data.calls);
  cover_rows(data.voip);
  cover_rows(data.gps);
  cover_rows(data.heart);
  cover_rows(data.light);
  cover_rows(data.power);
  cover_rows(data.msgs);
  cover_rows(data.texts);
  cover_rows(data.steps);
  cover_rows(data.taps);
  if (!sleep_by_day.empty()) {
    cover(sleep_by_day.begin()->first);
    cover(sleep_by_day.rbegin()->first);
  }
  if (day_lo > day_hi) return;  // nothing decrypted yet

  // Home detection over the whole history; without it (no night data) the
  // mobility family degrades to missing.
  HomePoint home{0, 0};
  bool home_ok = false;
  if (!data.gps.empty()) {
    try {
      home = detect_home(data.gps, mp);
      home_ok = true;
    } catch (const Error&) {
    }
  }

  auto day_bounds = [](std::int64_t d) {
    return std::pair<std::int64_t, std::int64_t>{d * kMsPerDay, (d + 1) * kMsPerDay};
  };
  auto hour_slice = [&](const auto& day_rows, std::int64_t day0, int h) {
    return slice(day_rows, day0 + static_cast<std::int64_t>(h) * kMsPerHour,
                 day0 + static_cast<std::int64_t>(h + 1) * kMsPerHour);
  };

  // --- sleep ---
  write_family(layout, pid, "sleep", day_lo, day_hi,
               [&](std::int64_t d, std::vector<double>& out) {
                 auto it = sleep_by_day.find(d);
                 if (it == sleep_by_day.end()) {
                   out.assign(17, kNan);
                   return;
                 }
                 std::int64_t wstart = (d - 1) * kMsPerDay +
                                       static_cast<std::int64_t>(fp.sleep_window_cut_min) *
                                           kMsPerMin;
                 SleepDaily s = sleep_daily(it->second, wstart, fp);
                 out = {s.total_deep_hrs,   s.total_light_hrs, s.total_rem_hrs,
                        s.total_awake_hrs,  s.total_hrs,       s.main_sleep_hrs,
                        s.n_awake_main,     s.n_awake_long_main, s.ratio_deep,
                        s.ratio_light,      s.ratio_rem,       s.ratio_awake,
                        s.start_offset_hrs, s.end_offset_hrs,  s.time_to_asleep_hrs,
                        s.time_to_getup_hrs, s.mean_efficiency};
               },
               rep);

  // --- steps ---
  write_family(layout, pid, "steps", day_lo, day_hi,
               [&](std::int64_t d, std::vector<double>& out) {
                 auto [d0, d1] = day_bounds(d);
                 auto rows = slice(data.steps, d0, d1);
                 if (rows.empty()) {
                   out.assign(14 + 24 * 4, kNan);
                   return;
                 }
                 auto hr = slice(data.heart, d0, d1);
                 StepsDaily s = steps_daily(rows, hr, fp);
                 out = {s.n_steps, s.n_wearing_mins, s.n_mins_with_steps, s.n_walks,
                        s.max_steps_walk, s.mean_steps_walk, s.max_walk_dur_mins,
                        s.mean_walk_dur_mins, s.steps_per_min_walk, s.max_consec_mins_over3,
                        s.max_consec_mins_over30, s.n_mins_walk, s.n_steps_walk,
                        s.max_steps_in_min};
                 for (int h = 0; h < 24; ++h) {
                   StepsHourly sh = steps_hourly(hour_slice(rows, d0, h));
                   out.insert(out.end(),
                              {sh.n_steps, sh.max_steps_in_min, sh.n_mins_with_steps,
                               sh.mean_steps_per_min});
                 }
               },
               rep);

  // --- heart ---
  write_family(layout, pid, "heart", day_lo, day_hi,
               [&](std::int64_t d, std::vector<double>& out) {
                 auto [d0, d1] = day_bounds(d);
                 auto rows = slice(data.heart, d0, d1);
                 if (rows.empty()) {
                   out.assign(12 + 24 * 6, kNan);
                   return;
                 }
                 HeartDaily s = heart_daily(rows, fp);
                 out = {s.HR_max, s.HR_min, s.HR_std, s.HR_mean, s.HR_median, s.HRV_max,
                        s.HRV_min, s.absHRV_mean, s.absHRV_std, s.HR_q25, s.HR_q125,
                        s.HRV_std};
                 for (int h = 0; h < 24; ++h) {
                   HeartHourly hh = heart_hourly(hour_slice(rows, d0, h), fp);
                   out.insert(out.end(), {hh.HR_max, hh.HR_min, hh.HR_std, hh.HR_mean,
                                          hh.HRV_max, hh.HRV_min});
                 }
               },
               rep);

  // --- gps-mobility ---
  write_family(layout, pid, "gps-mobility", day_lo, day_hi,
               [&](std::int64_t d, std::vector<double>& out) {
                 if (data.gps.empty() || !home_ok) {
                   out.assign(kMobilityDims, kNan);
                   return;
                 }
                 auto [d0, d1] = day_bounds(d);
                 auto rows = slice(data.gps, d0, d1);
                 PauseFlightTrace trace = extract_pauses_flights(rows, mp);
                 MobilityDay m = daily_mobility(rows, trace, home, d0, mp);
                 out = {m.Hometime_mins, m.SigLocsVisited, m.RoG_m, m.MaxHomeDist_m,
                        m.DistTravelled_m, m.MaxDiam_m, m.AvgFlightLen_m, m.StdFlightLen_m,
                        m.AvgFlightDur_s, m.StdFlightDur_s, m.ProbPause, m.SigLocEntropy,
                        m.MinsMissing, m.FirstMoveTime_mins, m.NumFlights};
               },
               rep);

  // --- accel ---
  write_family(layout, pid, "accel", day_lo, day_hi,
               [&](std::int64_t d, std::vector<double>& out) {
                 auto [d0, d1] = day_bounds(d);
                 auto rows = slice(data.accel, d0, d1);
                 for (int h = 0; h < 24; ++h) {
                   AccelHourly a = accel_hourly(hour_slice(rows, d0, h), fp);
                   out.insert(out.end(), {a.L_max, a.L_min, a.L_std, a.L_mean, a.ddt_max});
                 }
               },
               rep);

  // --- accessibilityLog ---
  write_family(layout, pid, "accessibilityLog", day_lo, day_hi,
               [&](std::int64_t d, std::vector<double>& out) {
                 auto [d0, d1] = day_bounds(d);
                 auto rows = slice(data.access, d0, d1);
                 for (int h = 0; h < 24; ++h)
                   out.push_back(accessibility_hourly(hour_slice(rows, d0, h)).n_taps);
               },
               rep);

  // --- callLog ---
  write_family(layout, pid, "callLog", day_lo, day_hi,
               [&](std::int64_t d, std::vector<double>& out) {
                 auto [d0, d1] = day_bounds(d);
                 auto rows = slice(data.calls, d0, d1);
                 if (rows.empty()) {
                   out.assign(5, kNan);
                   return;
                 }
                 CallDaily c = calls_daily(rows);
                 out = {c.n_incoming, c.n_outgoing, c.n_missed, c.total_duration_s,
                        c.n_contacts_talked};
               },
               rep);

  // --- light ---
  write_family(layout, pid, "light", day_lo, day_hi,
               [&](std::int64_t d, std::vector<double>& out) {
                 auto [d0, d1] = day_bounds(d);
                 auto rows = slice(data.light, d0, d1);
                 if (rows.empty()) {
                   out.assign(3 + 24 * 2, kNan);
                   return;
                 }
                 LightDaily l = light_daily(rows);
                 out = {l.max_log1p, l.mean_log1p, l.high50};
                 for (int h = 0; h < 24; ++h) {
                   LightHourly lh = light_hourly(hour_slice(rows, d0, h));
                   out.insert(out.end(), {lh.max_log1p, lh.mean_log1p});
                 }
               },
               rep);

  // --- powerState ---
  write_family(layout, pid, "powerState", day_lo, day_hi,
               [&](std::int64_t d, std::vector<double>& out) {
                 auto [d0, d1] = day_bounds(d);
                 auto rows = slice(data.power, d0, d1);
                 if (rows.empty()) {
                   out.assign(6 + 24 * 2, kNan);
                   return;
                 }
                 auto sessions = screen_sessions(rows, d0, d1);
                 PowerDaily p = power_daily(rows, sessions);
                 out = {p.n_power_down, p.max_screen_on_s, p.min_screen_on_s, p.std_screen_on_s,
                        p.mean_screen_on_s, p.n_screen_sessions};
                 for (int h = 0; h < 24; ++h) {
                   PowerHourly ph = power_hourly(rows, sessions, d0, h);
                   out.insert(out.end(), {ph.screen_on_s, ph.n_power_events});
                 }
               },
               rep);

  // --- sociabilityCallLog ---
  write_family(layout, pid, "sociabilityCallLog", day_lo, day_hi,
               [&](std::int64_t d, std::vector<double>& out) {
                 auto [d0, d1] = day_bounds(d);
                 auto rows = slice(data.voip, d0, d1);
                 if (rows.empty()) {
                   out.assign(4, kNan);
                   return;
                 }
                 CallDaily c = calls_daily(rows);
                 out = {c.n_incoming, c.n_outgoing, c.total_duration_s, c.n_contacts_talked};
               },
               rep);

  // --- sociabilityLog ---
  write_family(layout, pid, "sociabilityLog", day_lo, day_hi,
               [&](std::int64_t d, std::vector<double>& out) {
                 auto [d0, d1] = day_bounds(d);
                 auto rows = slice(data.msgs, d0, d1);
                 if (rows.empty()) {
                   out.assign(9, kNan);
                   return;
                 }
                 MsgDaily m = msgs_daily(rows);
                 out = {m.n_recv, m.n_sent, m.len_recv, m.len_sent, m.n_contacts_recv_only,
                        m.n_contacts_both, m.n_contacts_sent_only, m.n_msgs_total,
                        m.n_contacts_total};
               },
               rep);

  // --- tapsLog ---
  write_family(layout, pid, "tapsLog", day_lo, day_hi,
               [&](std::int64_t d, std::vector<double>& out) {
                 auto [d0, d1] = day_bounds(d);
                 auto rows = slice(data.taps, d0, d1);
                 if (rows.empty()) {
                   out.assign(13 + 24 * 6, kNan);
                   return;
                 }
                 auto power_rows = slice(data.power, d0, d1);
                 auto sessions = screen_sessions(power_rows, d0, d1);
                 TapsDaily t = taps_daily(rows, sessions, fp);
                 out = {t.n_taps, t.n_unique_apps};
                 for (int g = 0; g < kAppGroupCount; ++g) out.push_back(t.n_taps_per_group[g]);
                 out.insert(out.end(), {t.intertap_max_s, t.intertap_std_s, t.intertap_mean_s,
                                        t.intertap_median_s});
                 for (int h = 0; h < 24; ++h) {
                   TapsHourly th = taps_hourly(rows, sessions, d0, h, fp);
                   out.insert(out.end(), {th.n_taps, th.intertap_max_s, th.intertap_min_s,
                                          th.intertap_std_s, th.intertap_mean_s,
                                          th.intertap_median_s});
                 }
               },
               rep);

  // --- textsLog ---
  write_family(layout, pid, "textsLog", day_lo, day_hi,
               [&](std::int64_t d, std::vector<double>& out) {
                 auto [d0, d1] = day_bounds(d);
                 auto rows = slice(data.texts, d0, d1);
                 if (rows.empty()) {
                   out.assign(7, kNan);
                   return;
                 }
                 MsgDaily m = msgs_daily(rows);
                 out = {m.n_recv, m.n_sent, m.len_recv, m.len_sent, m.n_contacts_recv_only,
                        m.n_contacts_both, m.n_contacts_sent_only};
               },
               rep);
}

StageReport stage_summarize(const StudyLayout& layout, const StudyConfig& cfg) {
  StageReport rep;
  rep.stage = 5;
  fs::path in_root = layout.stage_study(4);
  for (const auto& pid : list_dirs(in_root)) {
    std::vector<fs::path> inputs;
    for (const auto& name : list_files(in_root / pid)) inputs.push_back(in_root / pid / name);
    if (inputs.empty()) continue;
    std::vector<fs::path> outputs;
    for (const auto& spec : manifest_family_totals())
      outputs.push_back(layout.stage_study(5) / pid / (spec.first + ".csv.gz"));
    if (up_to_date(outputs, inputs)) continue;
    summarize_participant(layout, cfg, pid, rep);
  }
  return rep;
}

// ------------------------------------------------------------ stage 6

StageReport stage_combine(const StudyLayout& layout, const StudyConfig&) {
  StageReport rep;
  rep.stage = 6;
  fs::path in_root = layout.stage_study(5);
  const auto& manifest = default_manifest();
  const auto families = manifest_family_totals();

  std::vector<fs::path> daily_files;
  for (const auto& pid : list_dirs(in_root)) {
    std::vector<fs::path> inputs;
    for (const auto& [family, total] : families) {
      (void)total;
      fs::path f = in_root / pid / (family + ".csv.gz");
      if (fs::exists(f)) inputs.push_back(f);
    }
    if (inputs.empty()) continue;
    fs::path out = layout.daily_gz(pid);
    daily_files.push_back(out);
    if (up_to_date({out}, inputs)) continue;
    rep.files_in += static_cast<std::int64_t>(inputs.size());

    // family -> date -> the row minus its date cell
    std::map<std::string, std::map<std::string, std::string>> by_family;
    std::vector<std::string> dates;
    for (const auto& [family, total] : families) {
      fs::path f = in_root / pid / (family + ".csv.gz");
      if (!fs::exists(f)) continue;
      std::string text = gzip_decompress(read_file_bytes(f));
      bool first = true;
      auto& rows = by_family[family];
      for_each_line(text, [&](std::string_view line) {
        if (first) {
          first = false;
          return;
        }
        if (line.empty()) return;
        size_t comma = line.find(',');
        std::string date(line.substr(0, comma));
        rows[date] = std::string(line.substr(comma + 1));
        if (by_family.size() == 1) dates.push_back(date);
      });
    }
    if (dates.empty() && !by_family.empty())
      for (const auto& [date, row] : by_family.begin()->second) {
        (void)row;
        dates.push_back(date);
      }

    std::string text = "date";
    for (const auto& e : manifest.entries) {
      text += ',';
      text += e.name;
    }
    text += '\n';
    for (const auto& date : dates) {
      text += date;
      for (const auto& [family, total] : families) {
        auto fit = by_family.find(family);
        auto rit = fit == by_family.end() ? std::map<std::string, std::string>::iterator{}
                                          : fit->second.find(date);
        if (fit != by_family.end() && rit != fit->second.end()) {
          text += ',';
          text += rit->second;
        } else {
          for (size_t i = 0; i < total; ++i) text += ",nan";
        }
      }
      text += '\n';
    }
    write_file_atomic(out, gzip_compress(text));
    ++rep.files_out;
  }

  // Cohort-wide table joining every participant's daily file.
  if (!daily_files.empty()) {
    fs::path all = layout.all_gz();
    if (!up_to_date({all}, daily_files)) {
      rep.files_in += static_cast<std::int64_t>(daily_files.size());
      std::string text = "participant,date";
      for (const auto& e : manifest.entries) {
        text += ',';
        text += e.name;
      }
      text += '\n';
      for (const auto& pid : list_dirs(layout.stage_study(6))) {
        fs::path f = layout.daily_gz(pid);
        if (!fs::exists(f)) continue;
        std::string daily = gzip_decompress(read_file_bytes(f));
        bool first = true;
        for_each_line(daily, [&](std::string_view line) {
          if (first) {
            first = false;
            return;
          }
          if (line.empty()) return;
          text += pid;
          text += ',';
          text.append(line);
          text += '\n';
        });
      }
      write_file_atomic(all, gzip_compress(text));
      ++rep.files_out;
    }
  }

  if (!fs::exists(layout.manifest_json())) {
    write_file_atomic(layout.manifest_json(), manifest_to_json(manifest));
    ++rep.files_out;
  }
  if (!fs::exists(layout.reconciliation_md())) {
    write_file_atomic(layout.reconciliation_md(), manifest_reconciliation_markdown());
    ++rep.files_out;
  }
  return rep;
}

}  // namespace

std::vector<StageReport> run_pipeline(const StudyLayout& layout, const StudyConfig& cfg,
                                      int first_stage, int last_stage) {
  if (first_stage < 1 || last_stage > 6 || first_stage > last_stage)
    throw Error(Errc::BadArgument, "stage range must satisfy 1 <= first <= last <= 6");
  std::vector<StageReport> reports;
  using Fn = StageReport (*)(const StudyLayout&, const StudyConfig&);
  static constexpr Fn stages[6] = {stage_decrypt, stage_patch,     stage_concat,
                                   stage_fix,     stage_summarize, stage_combine};
  for (int s = first_stage; s <= last_stage; ++s) {
    auto t0 = std::chrono::steady_clock::now();
    StageReport rep = stages[s - 1](layout, cfg);
    rep.duration_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace pheno
