#include "pheno/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "pheno/csv.hpp"
#include "pheno/geo.hpp"
#include "pheno/records.hpp"
#include "pheno/registry.hpp"
#include "pheno/time.hpp"

namespace pheno {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Thin deterministic layer over mt19937_64; distribution helpers are inlined
// here (not std::*_distribution) so outputs are stable across library
// versions.
struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  double u01() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * u01(); }
  int uniform_int(int a, int b) {  // inclusive bounds
    return a + static_cast<int>(g() % static_cast<std::uint64_t>(b - a + 1));
  }
  double normal(double mean, double sd) {
    double u1 = 1.0 - u01();
    double u2 = u01();
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  bool chance(double p) { return u01() < p; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<size_t>(g() % v.size())];
  }
};

struct Anchor {
  double lat, lon;
};

Anchor offset_anchor(const Anchor& a, double east_m, double north_m) {
  double lat = a.lat + north_m / kMetersPerDeg;
  double lon = a.lon + east_m / (kMetersPerDeg * std::cos(a.lat * M_PI / 180.0));
  return {lat, lon};
}

double anchor_dist_m(const Anchor& a, const Anchor& b) {
  return planar_dist(project(a.lat, a.lon), project(b.lat, b.lon));
}

struct Leg {
  double start_min, end_min;
  int from, to;
  bool walking;
};

struct WalkBout {
  double start_min, dur_min, rate;  // steps per minute while walking
};

struct Session {
  double start_min, end_min;
};

struct Profile {
  std::string id;
  Bytes public_key;
  Bytes salt;
  GpsOffset gps_offset;
  std::vector<Anchor> anchors;  // 0 home, 1 work, 2 lunch, 3 mall
  double bed_min, sleep_dur_min, sleep_eff;
  double bpm_base;
  double steps_rate;   // steps/min while walking
  double light_peak;
  double base_in_calls, base_out_calls;
  double base_sent, base_recv;
  int n_apps;
  std::vector<std::string> contacts;       // raw counterparties
  std::vector<std::string> close_contacts; // message both ways
  std::vector<std::string> apps;           // package pool
};

struct DayPlan {
  bool device_off = false;   // wearable unworn all day (and no night record)
  double charge_start = 0, charge_dur = 0;  // minutes
  std::vector<Leg> legs;     // chronological, non-overlapping
  std::vector<int> stays;    // anchor occupied before each leg / after last
  std::vector<WalkBout> walks;
  std::vector<Session> sessions;  // screen on/off
  bool lockdown = false;
};

constexpr double kWalkSpeed = 1.35;   // m/s
constexpr double kTransitSpeed = 7.0; // m/s

// Timeline over a day: at anchors between legs. stays[i] is occupied before
// legs[i]; stays.back() after the final leg.
DayPlan make_plan(Rng& rng, int day_serial, bool lockdown) {
  DayPlan plan;
  plan.lockdown = lockdown;
  plan.device_off = rng.chance(0.03);
  plan.charge_start = rng.uniform(1290, 1350);
  plan.charge_dur = rng.uniform(110, 190);

  const int dow = static_cast<int>(floor_mod(day_serial + 4, 7));  // 0 = Mon
  const bool weekday = dow < 5;
  struct Move {
    double depart;
    int to;
  };
  std::vector<Move> moves;
  if (weekday && (!lockdown ? true : rng.chance(0.15))) {
    moves.push_back({rng.uniform(495, 540), 1});
    if (!lockdown && rng.chance(0.85)) {
      moves.push_back({rng.uniform(740, 770), 2});
      moves.push_back({rng.uniform(790, 815), 1});
    }
    moves.push_back({rng.uniform(1080, 1130), 0});
  }
  const double hangout_p = lockdown ? 0.08 : (weekday ? 0.35 : 0.8);
  if (rng.chance(hangout_p)) {
    double leave = weekday ? rng.uniform(1150, 1220) : rng.uniform(620, 840);
    if (moves.empty() || leave > moves.back().depart + 40) {
      moves.push_back({leave, 3});
      moves.push_back({leave + rng.uniform(70, 170), 0});
    }
  }
  std::sort(moves.begin(), moves.end(),
            [](const Move& a, const Move& b) { return a.depart < b.depart; });

  int cur = 0;
  double cur_min = 0;
  plan.stays.push_back(0);
  for (const auto& mv : moves) {
    if (mv.depart <= cur_min || mv.to == cur) continue;
    plan.legs.push_back({mv.depart, mv.depart, cur, mv.to, false});
    plan.stays.push_back(mv.to);
    cur = mv.to;
    cur_min = mv.depart;  // duration filled once anchors are known
  }
  return plan;
}

void finish_plan(Rng& rng, DayPlan& plan, const Profile& prof) {
  // Travel durations and step bouts now that distances are known.
  double prev_end = 0;
  for (auto& leg : plan.legs) {
    double d = anchor_dist_m(prof.anchors[static_cast<size_t>(leg.from)],
                             prof.anchors[static_cast<size_t>(leg.to)]);
    leg.walking = d < 1600.0;
    double speed = leg.walking ? kWalkSpeed : kTransitSpeed;
    leg.start_min = std::max(leg.start_min, prev_end + 1.0);
    leg.end_min = std::min(1438.0, leg.start_min + d / speed / 60.0);
    prev_end = leg.end_min;
    double rate = prof.steps_rate * rng.uniform(0.92, 1.08);
    if (leg.walking) {
      plan.walks.push_back({leg.start_min, leg.end_min - leg.start_min, rate});
    } else {
      // walking to and from the transit stop
      plan.walks.push_back({leg.start_min, std::min(6.0, leg.end_min - leg.start_min), rate});
      plan.walks.push_back({std::max(leg.start_min, leg.end_min - 6.0), 6.0, rate});
    }
  }
  if (rng.chance(0.5)) {  // evening stroll near home
    plan.walks.push_back(
        {rng.uniform(1140, 1260), rng.uniform(18, 40), prof.steps_rate * rng.uniform(0.85, 1.0)});
  }
  // Screen sessions, sorted and non-overlapping.
  int n = rng.uniform_int(24, 46);
  std::vector<double> starts;
  starts.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) starts.push_back(rng.uniform(420, 1430));
  std::sort(starts.begin(), starts.end());
  for (int i = 0; i < n; ++i) {
    double limit = (i + 1 < n) ? starts[static_cast<size_t>(i + 1)] - 0.2 : 1439.5;
    double dur = std::min(rng.uniform(0.5, 11.0), limit - starts[static_cast<size_t>(i)]);
    if (dur < 0.4) continue;
    plan.sessions.push_back({starts[static_cast<size_t>(i)], starts[static_cast<size_t>(i)] + dur});
  }
}

// Position at a minute of the day, interpolating along legs.
Anchor position_at(const DayPlan& plan, const Profile& prof, double minute) {
  int anchor = plan.stays.empty() ? 0 : plan.stays[0];
  for (size_t i = 0; i < plan.legs.size(); ++i) {
    const Leg& leg = plan.legs[i];
    if (minute < leg.start_min) break;
    if (minute <= leg.end_min) {
      double f = (leg.end_min > leg.start_min)
                     ? (minute - leg.start_min) / (leg.end_min - leg.start_min)
                     : 1.0;
      const Anchor& a = prof.anchors[static_cast<size_t>(leg.from)];
      const Anchor& b = prof.anchors[static_cast<size_t>(leg.to)];
      return {a.lat + f * (b.lat - a.lat), a.lon + f * (b.lon - a.lon)};
    }
    anchor = plan.stays[i + 1];
  }
  return prof.anchors[static_cast<size_t>(anchor)];
}

bool in_leg(const DayPlan& plan, double minute) {
  for (const auto& leg : plan.legs)
    if (minute >= leg.start_min && minute <= leg.end_min) return true;
  return false;
}

double walk_rate_at(const DayPlan& plan, double minute) {
  for (const auto& w : plan.walks)
    if (minute >= w.start_min && minute < w.start_min + w.dur_min) return w.rate;
  return 0.0;
}

bool worn_at(const DayPlan& plan, double minute) {
  if (plan.device_off) return false;
  return !(minute >= plan.charge_start && minute < plan.charge_start + plan.charge_dur);
}

// ---- row emission -------------------------------------------------------

struct RowSink {
  std::vector<std::pair<std::int64_t, std::string>> rows;  // (utc ms, payload after tz)
  void add(std::int64_t ts, std::string payload) { rows.emplace_back(ts, std::move(payload)); }
};

std::string build_csv(Kind k, int tz_offset_min, RowSink& sink) {
  std::sort(sink.rows.begin(), sink.rows.end());
  std::string out;
  auto header = kind_header(k);
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (auto& [ts, payload] : sink.rows) {
    append_i64(out, ts);
    out += ',';
    append_i64(out, tz_offset_min);
    out += ',';
    out += payload;
    out += '\n';
  }
  return out;
}

std::string f1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}
std::string f3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}
std::string f6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::vector<std::string> generate_study(const StudyLayout& layout, const StudyConfig& cfg,
                                        const GenSpec& spec) {
  const std::int64_t start_day = day_serial(parse_day(spec.start_date));
  const std::int64_t tz_ms = static_cast<std::int64_t>(cfg.tz_offset_min) * 60000;
  auto to_utc = [&](double lms) { return static_cast<std::int64_t>(std::llround(lms)) - tz_ms; };

  Registry reg = load_registry(layout.registry_path().string());
  const std::vector<std::string> phone_models = {"Pixel 4",    "Galaxy S10", "Galaxy A51",
                                                 "Redmi Note 8", "Oppo Reno2", "Pixel 3a"};
  const std::vector<std::string> app_pool = {
      "com.whatsapp",          "org.telegram.messenger", "com.facebook.orca",
      "com.google.android.gm", "com.facebook.katana",    "com.instagram.android",
      "com.android.chrome",    "com.twitter.android",    "com.spotify.music",
      "com.netflix.mediaclient", "com.duolingo",          "com.google.android.apps.maps",
      "com.king.candycrushsaga", "com.mojang.minecraftpe"};

  std::vector<std::string> ids;
  for (int pi = 0; pi < spec.participants; ++pi) {
    const std::uint64_t sub = splitmix(spec.seed * 0x51ED2701u + static_cast<std::uint64_t>(pi) + 1);
    Rng prng(sub);

    Profile prof;
    prof.id = make_participant_id(sub);
    Bytes key_seed(32);
    for (auto& b : key_seed) b = static_cast<std::uint8_t>(prng.g() & 0xff);
    KeyPair kp = generate_keypair(key_seed);
    prof.public_key = kp.public_key;
    prof.salt.resize(16);
    for (auto& b : prof.salt) b = static_cast<std::uint8_t>(prng.g() & 0xff);
    prof.gps_offset = {prng.uniform(-4000, 4000), prng.uniform(-4000, 4000)};

    Anchor home{prng.uniform(1.27, 1.41), prng.uniform(103.69, 103.91)};
    prof.anchors = {home,
                    offset_anchor(home, prng.uniform(2200, 7000) * (prng.chance(0.5) ? 1 : -1),
                                  prng.uniform(1500, 6000) * (prng.chance(0.5) ? 1 : -1)),
                    {0, 0},
                    offset_anchor(home, prng.uniform(-2500, 2500), prng.uniform(900, 3000))};
    prof.anchors[2] = offset_anchor(prof.anchors[1], prng.uniform(150, 420), prng.uniform(-300, 300));

    prof.bed_min = prng.uniform(1340, 1425);
    prof.sleep_dur_min = prng.uniform(400, 500);
    prof.sleep_eff = prng.uniform(0.90, 0.96);
    prof.bpm_base = prng.uniform(58, 72);
    prof.steps_rate = prng.uniform(82, 108);
    prof.light_peak = prng.uniform(2500, 18000);
    prof.base_in_calls = prng.uniform(1.6, 4.2);
    prof.base_out_calls = prng.uniform(1.2, 3.2);
    prof.base_sent = prng.uniform(5, 15);
    prof.base_recv = prof.base_sent * prng.uniform(1.0, 1.5);
    prof.n_apps = prng.uniform_int(10, 13);

    int n_contacts = prng.uniform_int(9, 18);
    for (int c = 0; c < n_contacts; ++c) {
      std::string num = "+65";
      for (int d = 0; d < 8; ++d) num += static_cast<char>('0' + prng.uniform_int(0, 9));
      prof.contacts.push_back(num);
    }
    int n_close = std::min<int>(prng.uniform_int(4, 7), n_contacts);
    prof.close_contacts.assign(prof.contacts.begin(), prof.contacts.begin() + n_close);
    prof.apps = app_pool;

    if (!reg.contains(prof.id)) {
      Participant p;
      p.id = prof.id;
      p.public_key = prof.public_key;
      p.contact_salt = prof.salt;
      p.gps_offset = prof.gps_offset;
      p.enrollment_date = spec.start_date;
      p.visit_dates = {spec.start_date};
      if (spec.days > 42)
        p.visit_dates.push_back(format_day(civil_from_days(start_day + 42)));
      p.phone_model = phone_models[static_cast<size_t>(pi) % phone_models.size()];
      p.credential_secret = "cred-" + prof.id;
      p.tokens = {"at-" + prof.id + "-0", "rt-" + prof.id, 0};
      reg.add(std::move(p));
      write_file_atomic(layout.keystore_dir() / (prof.id + ".key"), to_hex(kp.private_key));
    }
    ids.push_back(prof.id);

    auto hashed = [&](const std::string& raw) { return hash_contact(prof.salt, raw); };
    auto encrypt_to = [&](Kind k, const fs::path& file, RowSink& sink) {
      if (sink.rows.empty()) return;
      std::string text = build_csv(k, cfg.tz_offset_min, sink);
      Bytes chunk = encrypt_chunk(Bytes(text.begin(), text.end()), prof.public_key,
                                  cfg.compress_uploads);
      write_file_atomic(file, chunk);
    };

    for (int di = 0; di < spec.days; ++di) {
      const std::int64_t day = start_day + di;
      const double day0 = static_cast<double>(day) * static_cast<double>(kMsPerDay);
      const bool lockdown = spec.lockdown_day >= 0 && di >= spec.lockdown_day;
      Rng rng(splitmix(sub ^ (static_cast<std::uint64_t>(di) * 0x100000001B3ULL)));
      DayPlan plan = make_plan(rng, day, lockdown);
      finish_plan(rng, plan, prof);

      const double step_scale = lockdown ? 0.65 : 1.0;
      const std::int64_t day_utc = static_cast<std::int64_t>(day0) - tz_ms;

      // --- heart (5 s cadence while worn) + steps (per worn minute) ---
      if (!plan.device_off) {
        RowSink heart;
        for (std::int64_t t = 0; t < kMsPerDay; t += 5000) {
          double minute = static_cast<double>(t) / 60000.0;
          if (!worn_at(plan, minute)) continue;
          double bpm = prof.bpm_base + 7.0 * std::sin(2.0 * M_PI * (minute - 420.0) / 1440.0) +
                       rng.normal(0, 2.2);
          if (minute < prof.sleep_dur_min / 60.0 * 8.0 && minute < 420) bpm -= 7.0;
          if (walk_rate_at(plan, minute) > 0) bpm += 24.0;
          int v = std::clamp(static_cast<int>(std::lround(bpm)), 40, 185);
          heart.add(to_utc(day0 + static_cast<double>(t)), std::to_string(v));
        }
        encrypt_to(Kind::heart, layout.raw_kind(prof.id, "heart") /
                                    (std::to_string(day_utc) + ".csv" + kChunkExtension),
                   heart);
        write_file_atomic(layout.raw_kind(prof.id, "heart") / (std::to_string(day_utc) + ".meta.json"),
                          std::string("{\"kind\":\"heart\",\"day\":\"") +
                              format_day(civil_from_days(day)) + "\",\"samples\":" +
                              std::to_string(heart.rows.size()) + ",\"synced_ms\":" +
                              std::to_string(day_utc + kMsPerDay + 3600000) + "}");

        RowSink steps;
        for (int m = 0; m < 1440; ++m) {
          if (!worn_at(plan, m + 0.5)) continue;
          double rate = walk_rate_at(plan, m + 0.5);
          int v = 0;
          if (rate > 0)
            v = static_cast<int>(std::lround(rate * rng.uniform(0.9, 1.1) * step_scale));
          else if (rng.chance(0.06))
            v = rng.uniform_int(1, 8);
          steps.add(to_utc(day0 + m * 60000.0), std::to_string(v));
        }
        encrypt_to(Kind::steps, layout.raw_kind(prof.id, "steps") /
                                    (std::to_string(day_utc) + ".csv" + kChunkExtension),
                   steps);
        write_file_atomic(layout.raw_kind(prof.id, "steps") / (std::to_string(day_utc) + ".meta.json"),
                          std::string("{\"kind\":\"steps\",\"day\":\"") +
                              format_day(civil_from_days(day)) + "\",\"samples\":" +
                              std::to_string(steps.rows.size()) + ",\"synced_ms\":" +
                              std::to_string(day_utc + kMsPerDay + 3600000) + "}");
      }

      // --- sleep: the night ending this morning (recorded under this day) ---
      if (!plan.device_off) {
        RowSink sleep;
        double eff = std::clamp(prof.sleep_eff - (lockdown ? 0.01 : 0.0) + rng.normal(0, 0.006),
                                0.80, 0.995);
        double dur = std::clamp(prof.sleep_dur_min + rng.normal(0, 30), 300.0, 620.0);
        double awake_total = dur * (1.0 - eff);
        double bed = (static_cast<double>(day) - 1.0) * static_cast<double>(kMsPerDay) +
                     (prof.bed_min + rng.normal(0, 18)) * 60000.0;
        bed = std::floor(bed / 30000.0) * 30000.0;
        double t = bed;
        double asleep_left = dur - awake_total;
        double awake_left = awake_total;
        auto seg = [&](const char* stage, double mins) {
          double s = std::max(0.5, std::round(mins * 2.0) / 2.0);
          sleep.add(to_utc(t), std::string(stage) + "," +
                                   std::to_string(static_cast<int>(s * 60.0)));
          t += s * 60000.0;
          return s;
        };
        awake_left -= seg("awake", std::min(awake_left, rng.uniform(1, 7)));
        const char* cycle[4] = {"light", "deep", "light", "rem"};
        int ci = 0;
        while (asleep_left > 0.5) {
          double mins = std::min(asleep_left, std::clamp(rng.normal(24, 6), 8.0, 42.0));
          asleep_left -= seg(cycle[ci % 4], mins);
          ++ci;
          if (awake_left > 0.5 && rng.chance(0.55)) {
            double a = std::min(awake_left, std::clamp(rng.normal(2.5, 1.5), 0.5, 8.0));
            if (asleep_left > 0.5) awake_left -= seg("awake", a);
          }
        }
        if (awake_left > 0.4) seg("awake", awake_left);
        if (rng.chance(0.06)) {  // afternoon nap
          t = day0 + rng.uniform(820, 900) * 60000.0;
          t = std::floor(t / 30000.0) * 30000.0;
          seg("light", rng.uniform(20, 45));
        }
        encrypt_to(Kind::sleep, layout.raw_kind(prof.id, "sleep") /
                                    (std::to_string(day_utc) + ".csv" + kChunkExtension),
                   sleep);
        std::int64_t wake_ms = sleep.rows.empty() ? day_utc : sleep.rows.back().first;
        write_file_atomic(layout.raw_kind(prof.id, "sleep") / (std::to_string(day_utc) + ".meta.json"),
                          std::string("{\"kind\":\"sleep\",\"day\":\"") +
                              format_day(civil_from_days(day)) + "\",\"samples\":" +
                              std::to_string(sleep.rows.size()) + ",\"synced_ms\":" +
                              std::to_string(day_utc + kMsPerDay + 3600000) +
                              ",\"wake_ms\":" + std::to_string(wake_ms) + "}");
      }

      // --- gps ---
      {
        RowSink gps;
        double minute = 0;
        while (minute < 1440.0) {
          bool moving = in_leg(plan, minute);
          if (!rng.chance(0.08)) {
            Anchor pos = position_at(plan, prof, minute);
            double jit = moving ? 12.0 : 7.0;
            Anchor noisy = offset_anchor(pos, rng.normal(0, jit), rng.normal(0, jit));
            double olat, olon;
            obfuscate_gps(prof.gps_offset, noisy.lat, noisy.lon, olat, olon);
            gps.add(to_utc(day0 + minute * 60000.0),
                    f6(olat) + "," + f6(olon) + "," + f1(rng.uniform(5, 25)));
          }
          minute += moving ? 1.0 : 10.0;
        }
        auto last = gps.rows.empty() ? day_utc : std::max_element(gps.rows.begin(), gps.rows.end())->first;
        encrypt_to(Kind::gps, layout.raw_kind(prof.id, "gps") /
                                  (std::to_string(last) + ".csv" + kChunkExtension),
                   gps);
      }

      // --- light ---
      {
        RowSink light;
        double peak = prof.light_peak * (lockdown ? 0.7 : 1.0) * rng.uniform(0.85, 1.1);
        for (int m = 0; m < 1440; m += 10) {
          double base;
          if (m > 420 && m < 1140) {
            double sun = std::sin(M_PI * (m - 420) / 720.0);
            double indoor = in_leg(plan, m) ? 1.0 : rng.uniform(0.04, 0.22);
            base = peak * sun * indoor;
          } else {
            base = rng.uniform(0, 4);
          }
          double lux = std::max(0.0, base + rng.normal(0, 3));
          if (rng.chance(0.0003)) lux = 1e15;  // saturated sensor reading
          light.add(to_utc(day0 + m * 60000.0), f1(lux));
        }
        encrypt_to(Kind::light, layout.raw_kind(prof.id, "light") /
                                    (std::to_string(light.rows.back().first) + ".csv" +
                                     kChunkExtension),
                   light);
      }

      // --- powerState + tapsLog + accessibilityLog off the screen sessions ---
      {
        RowSink power, taps, access;
        // day's app subset, entertainment share up during lockdown
        int n_apps = std::max(3, static_cast<int>(std::lround(
                                     prof.n_apps * (lockdown ? 0.85 : 1.0))));
        std::vector<std::string> day_apps;
        {
          std::vector<std::string> pool = prof.apps;
          for (int a = 0; a < n_apps && !pool.empty(); ++a) {
            size_t idx = static_cast<size_t>(rng.g() % pool.size());
            day_apps.push_back(pool[idx]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
          }
        }
        std::vector<std::string> ent = {"com.spotify.music", "com.netflix.mediaclient",
                                        "com.duolingo"};
        for (const auto& s : plan.sessions) {
          std::int64_t on = to_utc(day0 + s.start_min * 60000.0);
          std::int64_t off = to_utc(day0 + s.end_min * 60000.0);
          power.add(on, "screen_on");
          power.add(off, "screen_off");
          // taps: the session hops between a few apps
          double t = s.start_min * 60.0 + rng.uniform(0.5, 2.0);
          const double end_s = s.end_min * 60.0;
          std::string app = (lockdown ? rng.chance(0.34) : rng.chance(0.22))
                                ? rng.pick(ent)
                                : rng.pick(day_apps);
          bool messenger = app == "com.whatsapp" || app == "org.telegram.messenger" ||
                           app == "com.facebook.orca";
          int orientation = rng.chance(0.9) ? 0 : 1;
          while (t < end_s) {
            taps.add(to_utc(day0 + t * 1000.0), app + "," + std::to_string(orientation));
            if (messenger && rng.chance(0.5)) {
              const char* toks[5] = {"alpha", "num", "punct", "DELETE", "other"};
              double r = rng.u01();
              int ti = r < 0.72 ? 0 : r < 0.80 ? 1 : r < 0.90 ? 2 : r < 0.98 ? 3 : 4;
              access.add(to_utc(day0 + (t + 0.12) * 1000.0), toks[ti]);
            }
            if (rng.chance(0.06)) {
              app = rng.chance(0.25) ? rng.pick(ent) : rng.pick(day_apps);
              messenger = app == "com.whatsapp" || app == "org.telegram.messenger" ||
                          app == "com.facebook.orca";
            }
            t += rng.uniform(1.2, 6.5);
          }
        }
        if (rng.chance(0.04))
          power.add(to_utc(day0 + rng.uniform(400, 1400) * 60000.0), "power_down");
        if (!power.rows.empty())
          encrypt_to(Kind::powerState, layout.raw_kind(prof.id, "powerState") /
                                           (std::to_string(std::max_element(power.rows.begin(),
                                                                            power.rows.end())
                                                               ->first) +
                                            ".csv" + kChunkExtension),
                     power);
        if (!taps.rows.empty())
          encrypt_to(Kind::tapsLog, layout.raw_kind(prof.id, "tapsLog") /
                                        (std::to_string(std::max_element(taps.rows.begin(),
                                                                         taps.rows.end())
                                                            ->first) +
                                         ".csv" + kChunkExtension),
                     taps);
        if (!access.rows.empty())
          encrypt_to(Kind::accessibilityLog,
                     layout.raw_kind(prof.id, "accessibilityLog") /
                         (std::to_string(std::max_element(access.rows.begin(), access.rows.end())
                                             ->first) +
                          ".csv" + kChunkExtension),
                     access);
      }

      // --- calls and messages ---
      {
        RowSink calls, voip, msgs, texts;
        auto call_row = [&](RowSink& sink, const char* dir, bool missed, const char* type) {
          double at = rng.uniform(480, 1380);
          int dur = missed ? 0
                           : (rng.chance(0.4) ? rng.uniform_int(15, 55)
                                              : rng.uniform_int(65, 700));
          sink.add(to_utc(day0 + at * 60000.0),
                   std::string(missed ? "incoming" : dir) + "," + std::to_string(dur) + "," +
                       (missed ? "missed" : type) + "," + hashed(rng.pick(prof.contacts)));
        };
        double in_rate = prof.base_in_calls * (lockdown ? 0.5 : 1.0);
        int n_in = std::max(0, static_cast<int>(std::lround(rng.normal(in_rate, 0.9))));
        int n_out = std::max(0, static_cast<int>(std::lround(rng.normal(prof.base_out_calls, 0.8))));
        for (int c = 0; c < n_in; ++c) call_row(calls, "incoming", false, "voice");
        for (int c = 0; c < n_out; ++c) call_row(calls, "outgoing", false, "voice");
        for (int c = rng.uniform_int(0, 2); c > 0; --c) call_row(calls, "incoming", true, "voice");
        int n_vin = std::max(0, static_cast<int>(std::lround(rng.normal(in_rate * 0.5, 0.6))));
        int n_vout = std::max(0, static_cast<int>(std::lround(rng.normal(prof.base_out_calls * 0.5, 0.6))));
        for (int c = 0; c < n_vin; ++c) call_row(voip, "incoming", false, "voip");
        for (int c = 0; c < n_vout; ++c) call_row(voip, "outgoing", false, "voip");

        auto msg_row = [&](RowSink& sink, const char* dir, const char* type) {
          const std::string& who =
              rng.chance(0.62) ? rng.pick(prof.close_contacts) : rng.pick(prof.contacts);
          sink.add(to_utc(day0 + rng.uniform(440, 1420) * 60000.0),
                   std::string(dir) + "," + hashed(who) + "," +
                       std::to_string(rng.uniform_int(3, 180)) + "," + type);
        };
        int n_sent = std::max(0, static_cast<int>(std::lround(rng.normal(prof.base_sent, 2.2))));
        int n_recv = std::max(0, static_cast<int>(std::lround(rng.normal(prof.base_recv, 2.6))));
        for (int c = 0; c < n_sent; ++c) msg_row(msgs, "sent", "text");
        for (int c = 0; c < n_recv; ++c) msg_row(msgs, "received", "text");
        for (int c = rng.uniform_int(0, 3); c > 0; --c)
          msg_row(texts, rng.chance(0.5) ? "sent" : "received", "sms");

        for (auto [kind, sink] : {std::pair<Kind, RowSink*>{Kind::callLog, &calls},
                                  {Kind::sociabilityCallLog, &voip},
                                  {Kind::sociabilityLog, &msgs},
                                  {Kind::textsLog, &texts}}) {
          if (sink->rows.empty()) continue;
          auto last = std::max_element(sink->rows.begin(), sink->rows.end())->first;
          encrypt_to(kind, layout.raw_kind(prof.id, kind_name(kind)) /
                               (std::to_string(last) + ".csv" + kChunkExtension),
                     *sink);
        }
      }

      // --- accel: short bursts around the clock ---
      {
        RowSink accel;
        for (int h = 7; h < 23; ++h) {
          double start = h * 60.0 + rng.uniform(0, 54);
          bool active = walk_rate_at(plan, start) > 0;
          for (int s = 0; s < 30; ++s) {
            double amp = active ? 2.4 : 0.5;
            accel.add(to_utc(day0 + start * 60000.0 + s * 200.0),
                      f3(rng.normal(0, amp)) + "," + f3(rng.normal(0, amp)) + "," +
                          f3(9.81 + rng.normal(0, amp)));
          }
        }
        encrypt_to(Kind::accel, layout.raw_kind(prof.id, "accel") /
                                    (std::to_string(accel.rows.back().first) + ".csv" +
                                     kChunkExtension),
                   accel);
      }
    }
  }

  save_registry(reg, layout.registry_path().string());
  if (!fs::exists(layout.config_path())) save_config(cfg, layout.config_path().string());
  return ids;
}

}  // namespace pheno
