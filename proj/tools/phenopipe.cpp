// phenopipe: one binary for the whole backend — key generation, participant
// onboarding, synthetic data generation, wearable sync, the six-stage
// pipeline, anomaly scoring, cohort comparison, dashboards and plot export.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pheno/anomaly.hpp"
#include "pheno/cohort.hpp"
#include "pheno/config.hpp"
#include "pheno/crypto.hpp"
#include "pheno/csv.hpp"
#include "pheno/dashboards.hpp"
#include "pheno/error.hpp"
#include "pheno/export.hpp"
#include "pheno/gzio.hpp"
#include "pheno/layout.hpp"
#include "pheno/manifest.hpp"
#include "pheno/pipeline.hpp"
#include "pheno/records.hpp"
#include "pheno/registry.hpp"
#include "pheno/synthgen.hpp"
#include "pheno/time.hpp"
#include "pheno/wearsync.hpp"

namespace {

using namespace pheno;

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

StudyConfig load_study_config(const std::string& root) {
  fs::path p = fs::path(root) / "study.json";
  if (fs::exists(p)) return load_config(p.string());
  return StudyConfig{};
}

StudyLayout make_layout(const std::string& root, const StudyConfig& cfg) {
  return StudyLayout{fs::path(root), cfg.study_name};
}

std::int64_t day_serial_of(const std::string& date) {
  return day_serial(parse_day(date));
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_file_atomic(fs::path(out), text);
}

// ------------------------------------------------------------ dash inputs

std::int64_t max_stem_ms(const fs::path& dir) {
  std::int64_t best = -1;
  if (!fs::exists(dir)) return best;
  for (const auto& name : list_files(dir)) {
    if (name.size() <= std::string(kChunkExtension).size()) continue;
    if (name.find(".meta.json") != std::string::npos) continue;
    std::int64_t ts;
    if (try_parse_i64(std::string_view(name).substr(0, name.find('.')), ts))
      best = std::max(best, ts);
  }
  return best;
}

ParticipantMeta collect_meta(const StudyLayout& layout, const StudyConfig& cfg,
                             const Participant& p) {
  ParticipantMeta meta;
  meta.id = p.id;
  meta.phone_model = p.phone_model;
  meta.enrollment_date = p.enrollment_date;
  meta.visit_dates = p.visit_dates;

  meta.last_location_ms = max_stem_ms(layout.raw_kind(p.id, "gps"));
  meta.last_sociability_ms = max_stem_ms(layout.raw_kind(p.id, "sociabilityLog"));
  meta.last_taps_ms = max_stem_ms(layout.raw_kind(p.id, "tapsLog"));
  for (Kind k : all_kinds()) {
    std::string kn = kind_name(k);
    if (kn == "heart" || kn == "steps" || kn == "sleep") continue;
    meta.last_phone_upload_ms =
        std::max(meta.last_phone_upload_ms, max_stem_ms(layout.raw_kind(p.id, kn)));
  }
  for (const char* kn : {"heart", "steps", "sleep"}) {
    fs::path dir = layout.raw_kind(p.id, kn);
    if (!fs::exists(dir)) continue;
    for (const auto& name : list_files(dir)) {
      if (name.find(".meta.json") == std::string::npos) continue;
      nlohmann::json j = nlohmann::json::parse(read_file(dir / name), nullptr, false);
      if (j.is_discarded()) continue;
      std::int64_t synced = j.value("synced_ms", std::int64_t{-1});
      meta.last_wearable_upload_ms = std::max(meta.last_wearable_upload_ms, synced);
      if (std::string(kn) == "sleep")
        meta.last_wake_ms = std::max(meta.last_wake_ms, j.value("wake_ms", std::int64_t{-1}));
      if (std::string(kn) == "heart" && j.contains("day") && j["day"].is_string()) {
        std::int64_t day_utc_serial = day_serial_of(j["day"].get<std::string>());
        std::int64_t samples = j.value("samples", std::int64_t{0});
        meta.heart_samples_by_day[day_utc_serial] += samples;
      }
    }
  }
  (void)cfg;
  return meta;
}

CompletionCounts collect_completion(const StudyLayout& layout, std::int64_t& latest_day) {
  CompletionCounts counts;
  latest_day = -1;
  fs::path root = layout.stage_study(3);
  for (const auto& pid : list_dirs(root)) {
    for (const auto& name : list_files(root / pid)) {
      std::string kind = name.substr(0, name.find('.'));
      CsvTable t = parse_csv(read_file(root / pid / name));
      auto& per_day = counts[pid][kind];
      for (const auto& row : t.rows) {
        std::int64_t ts, tz;
        if (!try_parse_i64(row[0], ts) || !try_parse_i64(row[1], tz)) continue;
        std::int64_t day = floor_div(local_ms(ts, static_cast<int>(tz)), kMsPerDay);
        ++per_day[day];
        latest_day = std::max(latest_day, day);
      }
    }
  }
  return counts;
}

ClinicianSeries collect_clinician(const StudyLayout& layout, std::int64_t& latest_day) {
  ClinicianSeries series;
  latest_day = -1;
  const auto& manifest = default_manifest();
  size_t c_sleep_hrs = manifest.index_of("sleep.daily_total_hrs");
  size_t c_sleep_eff = manifest.index_of("sleep.daily_mean_efficiency");
  size_t c_contacts = manifest.index_of("sociabilityLog.daily_n_contacts_total");
  size_t c_hometime = manifest.index_of("gps-mobility.daily_Hometime_mins");
  size_t c_missing = manifest.index_of("gps-mobility.daily_MinsMissing");
  size_t c_rog = manifest.index_of("gps-mobility.daily_RoG_m");

  for (const auto& pid : list_dirs(layout.stage_study(6))) {
    fs::path f = layout.daily_gz(pid);
    if (!fs::exists(f)) continue;
    CsvTable t = parse_csv(gzip_decompress(read_file_bytes(f)));
    auto& days = series[pid];
    for (const auto& row : t.rows) {
      std::int64_t day = day_serial_of(row[0]);
      latest_day = std::max(latest_day, day);
      ClinicianDay cd;
      auto cell = [&](size_t col) { return parse_f64(row[col + 1]); };
      cd.sleep_hrs = cell(c_sleep_hrs);
      cd.sleep_eff = cell(c_sleep_eff);
      cd.msg_contacts = cell(c_contacts);
      double hometime = cell(c_hometime), missing = cell(c_missing);
      if (!std::isnan(hometime) && !std::isnan(missing))
        cd.away_mins = std::max(0.0, (1440.0 - missing) - hometime);
      cd.rog_m = cell(c_rog);
      days[day] = cd;
    }
    // calls longer than a minute, from the consolidated call log
    fs::path calls = layout.stage_study(3) / pid / "callLog.csv";
    std::map<std::int64_t, double> per_day;
    if (fs::exists(calls)) {
      CsvTable ct = parse_csv(read_file(calls));
      for (const auto& row : ct.rows) {
        std::int64_t ts, tz;
        double dur;
        if (!try_parse_i64(row[0], ts) || !try_parse_i64(row[1], tz) ||
            !try_parse_f64(row[3], dur))
          continue;
        if (dur > 60.0)
          per_day[floor_div(local_ms(ts, static_cast<int>(tz)), kMsPerDay)] += 1.0;
      }
    }
    for (auto& [day, cd] : days) {
      auto it = per_day.find(day);
      cd.calls_over_min = it == per_day.end() ? 0.0 : it->second;
    }
  }
  return series;
}

// ------------------------------------------------------------ subcommands

Bytes expand_seed(std::uint64_t s) {
  Bytes out(32);
  for (int i = 0; i < 4; ++i) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    for (int b = 0; b < 8; ++b) out[i * 8 + b] = static_cast<std::uint8_t>(z >> (8 * b));
  }
  return out;
}

int cmd_keygen(std::optional<std::uint64_t> seed) {
  KeyPair kp = seed ? generate_keypair(expand_seed(*seed)) : generate_keypair();
  nlohmann::json j;
  j["public_key"] = to_hex(kp.public_key);
  j["private_key"] = to_hex(kp.private_key);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_onboard(const std::string& root, std::string id, const std::string& phone,
                std::string enroll, const std::vector<std::string>& visits,
                const std::string& api_base_flag) {
  StudyConfig cfg = load_study_config(root);
  StudyLayout layout = make_layout(root, cfg);
  Registry reg = load_registry(layout.registry_path().string());

  if (id.empty()) {
    Bytes r = random_bytes(8);
    std::uint64_t s = 0;
    for (auto b : r) s = (s << 8) | b;
    id = make_participant_id(s);
  }
  if (enroll.empty()) {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", tm.tm_year + 1900, tm.tm_mon + 1,
                  tm.tm_mday);
    enroll = buf;
  }

  Participant p;
  p.id = id;
  KeyPair kp = generate_keypair();
  p.public_key = kp.public_key;
  p.contact_salt = random_bytes(16);
  Bytes off = random_bytes(8);
  auto axis = [&](int i) {
    std::uint32_t u = (off[i] << 24) | (off[i + 1] << 16) | (off[i + 2] << 8) | off[i + 3];
    return (u / 4294967295.0) * 10000.0 - 5000.0;  // +-5 km
  };
  p.gps_offset = {axis(0), axis(4)};
  p.enrollment_date = enroll;
  p.visit_dates = visits;
  std::sort(p.visit_dates.begin(), p.visit_dates.end());
  if (p.visit_dates.empty()) p.visit_dates.push_back(enroll);
  p.phone_model = phone;
  p.credential_secret = to_hex(random_bytes(16));
  reg.add(p);  // throws DuplicateParticipant

  write_file_atomic(layout.keystore_dir() / (id + ".key"), to_hex(kp.private_key));
  save_registry(reg, layout.registry_path().string());
  if (!fs::exists(layout.config_path())) save_config(cfg, layout.config_path().string());

  std::string api_base =
      !api_base_flag.empty() ? api_base_flag : env_or("PHENO_API_BASE", cfg.api_base);
  nlohmann::json payload;  // what the enrollment QR code would carry
  payload["participant_id"] = id;
  payload["api_base"] = api_base;
  payload["public_key"] = to_hex(p.public_key);
  payload["credential_secret"] = p.credential_secret;
  std::cout << payload.dump(2) << "\n";
  return 0;
}

int cmd_gen(const std::string& root, int participants, int days, int lockdown_day,
            std::uint64_t seed, const std::string& start) {
  StudyConfig cfg = load_study_config(root);
  StudyLayout layout = make_layout(root, cfg);
  GenSpec spec;
  spec.participants = participants;
  spec.days = days;
  spec.lockdown_day = lockdown_day;
  spec.seed = seed;
  spec.start_date = start;
  std::vector<std::string> ids = generate_study(layout, cfg, spec);
  for (const auto& id : ids) std::cout << id << "\n";
  return 0;
}

int cmd_sync(const std::string& root, const std::string& participant, const std::string& date,
             const std::string& mock_fixtures, const std::string& api_base_flag) {
  StudyConfig cfg = load_study_config(root);
  StudyLayout layout = make_layout(root, cfg);
  Registry reg = load_registry(layout.registry_path().string());

  std::unique_ptr<MockServer> server;
  std::string base = !api_base_flag.empty() ? api_base_flag
                                            : env_or("PHENO_API_BASE", cfg.api_base);
  if (!mock_fixtures.empty()) {
    server = std::make_unique<MockServer>(mock_fixtures, 0);
    base = server->base_url();
  }
  WearClient client(base);
  CivilDay day = parse_day(date);

  std::vector<std::string> targets;
  if (!participant.empty())
    targets.push_back(participant);
  else
    for (const auto& p : reg.participants) targets.push_back(p.id);

  int rc = 0;
  for (const auto& pid : targets) {
    try {
      SyncReport rep = client.poll_participant(layout, cfg, reg, pid, day);
      std::cout << pid << ": stored=" << rep.series_stored
                << (rep.partial ? " partial" : "");
      for (const auto& k : rep.missing_kinds) std::cout << " missing:" << k;
      std::cout << "\n";
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      rc = 1;
    }
  }
  save_registry(reg, layout.registry_path().string());
  return rc;
}

int cmd_run(const std::string& root, int stage, int jobs) {
  if (jobs < 1) throw Error(Errc::BadArgument, "--jobs must be >= 1");
  StudyConfig cfg = load_study_config(root);
  StudyLayout layout = make_layout(root, cfg);
  int first = stage == 0 ? 1 : stage;
  int last = stage == 0 ? 6 : stage;
  for (const StageReport& r : run_pipeline(layout, cfg, first, last)) {
    std::printf("stage %d: in=%lld out=%lld dropped=%lld dups=%lld (%.2fs)\n", r.stage,
                static_cast<long long>(r.files_in), static_cast<long long>(r.files_out),
                static_cast<long long>(r.rows_dropped),
                static_cast<long long>(r.duplicates_removed), r.duration_s);
  }
  return 0;
}

FeatureMatrix feature_matrix_for(const StudyLayout& layout, const std::string& pid) {
  FeatureMatrix days;
  fs::path f = layout.daily_gz(pid);
  if (!fs::exists(f)) return days;
  const auto& manifest = default_manifest();
  const auto& selection = anomaly_feature_selection();
  std::vector<size_t> cols;
  for (const auto& [label, name] : selection) {
    (void)label;
    cols.push_back(manifest.index_of(name));
  }
  CsvTable t = parse_csv(gzip_decompress(read_file_bytes(f)));
  for (const auto& row : t.rows) {
    std::vector<double> vals(cols.size());
    for (size_t i = 0; i < cols.size(); ++i) vals[i] = parse_f64(row[cols[i] + 1]);
    days[day_serial_of(row[0])] = std::move(vals);
  }
  return days;
}

int cmd_anomaly(const std::string& root, const std::string& participant,
                const std::string& date) {
  StudyConfig cfg = load_study_config(root);
  StudyLayout layout = make_layout(root, cfg);
  std::optional<std::int64_t> only_day;
  if (!date.empty()) only_day = day_serial_of(date);

  ScoreTable table;
  if (fs::exists(layout.scores_csv()))
    table = parse_score_table(read_file(layout.scores_csv()));

  std::vector<std::string> targets;
  if (!participant.empty())
    targets.push_back(participant);
  else
    targets = list_dirs(layout.stage_study(6));

  for (const auto& pid : targets) {
    FeatureMatrix days = feature_matrix_for(layout, pid);
    if (days.empty()) continue;
    score_participant(table, pid, days, cfg, only_day);
  }
  write_file_atomic(layout.scores_csv(), render_score_table(table));
  std::cout << "scored " << targets.size() << " participants -> "
            << layout.scores_csv().string() << "\n";
  return 0;
}

std::pair<int, int> parse_window(const std::string& s) {
  size_t colon = s.find(':');
  if (colon == std::string::npos)
    throw Error(Errc::BadArgument, "window must be <start>:<end>, e.g. -45:-3");
  return {static_cast<int>(parse_i64(std::string_view(s).substr(0, colon))),
          static_cast<int>(parse_i64(std::string_view(s).substr(colon + 1)))};
}

const std::vector<std::string>& default_compare_features() {
  static const std::vector<std::string> f = {
      "steps.daily_n_steps",
      "light.daily_max_log1p_lux",
      "callLog.daily_n_incoming",
      "tapsLog.daily_n_unique_apps",
      "sleep.daily_mean_efficiency",
      "gps-mobility.daily_Hometime_mins",
      "tapsLog.daily_n_taps_in_entertainment",
  };
  return f;
}

int cmd_compare(const std::string& root, const std::string& event, const std::string& pre,
                const std::string& post, std::vector<std::string> features,
                const std::string& out) {
  StudyConfig cfg = load_study_config(root);
  StudyLayout layout = make_layout(root, cfg);
  if (features.empty()) features = default_compare_features();

  WindowSpec spec;
  spec.pre_start_day = cfg.window_pre_start;
  spec.pre_end_day = cfg.window_pre_end;
  spec.post_start_day = cfg.window_post_start;
  spec.post_end_day = cfg.window_post_end;
  spec.min_completeness = cfg.completeness_threshold;
  if (!pre.empty()) std::tie(spec.pre_start_day, spec.pre_end_day) = parse_window(pre);
  if (!post.empty()) std::tie(spec.post_start_day, spec.post_end_day) = parse_window(post);

  const auto& manifest = default_manifest();
  std::vector<size_t> cols;
  for (const auto& f : features) cols.push_back(manifest.index_of(f));

  std::map<std::string, CohortSeries> by_feature;
  std::map<std::string, std::int64_t> event_day;
  std::int64_t ev = day_serial_of(event);
  fs::path all = layout.all_gz();
  if (!fs::exists(all)) throw Error(Errc::IoError, "no combined daily table; run the pipeline");
  CsvTable t = parse_csv(gzip_decompress(read_file_bytes(all)));
  for (const auto& row : t.rows) {
    const std::string& pid = row[0];
    std::int64_t day = day_serial_of(row[1]);
    event_day[pid] = ev;
    for (size_t i = 0; i < features.size(); ++i) {
      double v = parse_f64(row[cols[i] + 2]);
      if (!std::isnan(v)) by_feature[features[i]][pid][day] = v;
    }
  }

  std::vector<ComparisonRow> rows = window_compare(by_feature, event_day, features, spec);
  std::string csv = comparison_csv(rows);
  fs::path dest = out.empty() ? layout.stage_study(6) / "comparison.csv" : fs::path(out);
  write_file_atomic(dest, csv);
  std::cout << csv;
  return 0;
}

int cmd_dash(const std::string& root, const std::string& kind, const std::string& out,
             const std::string& date, int days, std::int64_t now_ms) {
  StudyConfig cfg = load_study_config(root);
  StudyLayout layout = make_layout(root, cfg);
  std::string html;
  if (kind == "collection") {
    Registry reg = load_registry(layout.registry_path().string());
    std::vector<ParticipantMeta> metas;
    for (const auto& p : reg.participants) metas.push_back(collect_meta(layout, cfg, p));
    if (now_ms < 0) {
      // deterministic reference clock: one hour past the freshest upload
      std::int64_t latest = 0;
      for (const auto& m : metas)
        latest = std::max({latest, m.last_phone_upload_ms, m.last_wearable_upload_ms,
                           m.last_location_ms, m.last_sociability_ms, m.last_taps_ms});
      now_ms = latest + kMsPerHour;
    }
    html = render_collection(metas, now_ms, cfg);
  } else if (kind == "completion") {
    std::int64_t latest_day = -1;
    CompletionCounts counts = collect_completion(layout, latest_day);
    std::int64_t end_day = date.empty() ? latest_day : day_serial_of(date);
    html = render_completion(counts, end_day, days);
  } else if (kind == "clinician") {
    std::int64_t latest_day = -1;
    ClinicianSeries series = collect_clinician(layout, latest_day);
    std::int64_t today = date.empty() ? latest_day + 1 : day_serial_of(date);
    html = render_clinician(series, today, cfg);
  } else if (kind == "anomaly") {
    if (!fs::exists(layout.scores_csv()))
      throw Error(Errc::IoError, "no score table; run `phenopipe anomaly` first");
    ScoreTable table = parse_score_table(read_file(layout.scores_csv()));
    std::int64_t day = -1;
    if (!date.empty()) {
      day = day_serial_of(date);
    } else {
      for (const auto& [pid, rows] : table)
        if (!rows.empty()) day = std::max(day, rows.rbegin()->first);
    }
    html = render_anomaly(table, day, cfg);
  } else {
    throw Error(Errc::BadArgument, "kind must be collection|completion|clinician|anomaly");
  }
  write_output(out, html);
  return 0;
}

int cmd_export(const std::string& root, const std::string& participant,
               const std::string& feature, const std::string& interval,
               const std::string& statistic, const std::string& out) {
  StudyConfig cfg = load_study_config(root);
  StudyLayout layout = make_layout(root, cfg);
  write_output(out, export_series(layout, cfg, participant, feature, interval, statistic));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"digital-phenotyping study backend"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string root = env_or("PHENO_ROOT", ".");
  app.add_option("--root", root, "study root directory (env PHENO_ROOT)")
      ->envname("PHENO_ROOT");

  // keygen
  auto* keygen = app.add_subcommand("keygen", "generate an encryption keypair");
  std::optional<std::uint64_t> kg_seed;
  keygen->add_option("--seed", kg_seed, "deterministic seed (testing only)");

  // onboard
  auto* onboard = app.add_subcommand("onboard", "enroll a participant, print the QR payload");
  std::string ob_id, ob_phone = "unknown", ob_enroll, ob_api;
  std::vector<std::string> ob_visits;
  onboard->add_option("--id", ob_id, "participant id (default: random)");
  onboard->add_option("--phone", ob_phone, "phone model");
  onboard->add_option("--enroll", ob_enroll, "enrollment date YYYY-MM-DD (default: today)");
  onboard->add_option("--visit", ob_visits, "visit date YYYY-MM-DD (repeatable)");
  onboard->add_option("--api-base", ob_api, "server base URL for the payload");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic study");
  int g_participants = 20, g_days = 90, g_lockdown = -1;
  std::uint64_t g_seed = 7;
  std::string g_start = "2020-01-06", g_out;
  gen->add_option("--participants", g_participants, "cohort size")->check(CLI::PositiveNumber);
  gen->add_option("--days", g_days, "days per participant")->check(CLI::PositiveNumber);
  gen->add_option("--lockdown-day", g_lockdown, "regime-switch day index (-1 = none)");
  gen->add_option("--seed", g_seed, "generator seed");
  gen->add_option("--start", g_start, "first day YYYY-MM-DD");
  gen->add_option("--out", g_out, "output root (default --root)");

  // sync
  auto* sync = app.add_subcommand("sync", "download wearable data for a day");
  std::string s_participant, s_date, s_mock, s_api;
  sync->add_option("--participant", s_participant, "participant id (default: all)");
  sync->add_option("--date", s_date, "day to fetch YYYY-MM-DD")->required();
  sync->add_option("--mock-server", s_mock, "serve this fixture dir instead of a real API");
  sync->add_option("--api-base", s_api, "wearable API base URL (env PHENO_API_BASE)");

  // run
  auto* run = app.add_subcommand("run", "run the six-stage processing pipeline");
  int r_stage = 0, r_jobs = 1;
  run->add_option("--stage", r_stage, "run only this stage (1-6; default: all)")
      ->check(CLI::Range(1, 6));
  run->add_option("--jobs", r_jobs, "worker hint (stages are currently single-threaded)");

  // anomaly
  auto* anomaly = app.add_subcommand("anomaly", "update the anomaly score table");
  std::string a_participant, a_date;
  anomaly->add_option("--participant", a_participant, "participant id (default: all)");
  anomaly->add_option("--date", a_date, "score only this day YYYY-MM-DD (default: all days)");

  // compare
  auto* compare = app.add_subcommand("compare", "pre/post event-window comparison");
  std::string c_event, c_pre, c_post, c_out;
  std::vector<std::string> c_features;
  compare->add_option("--event", c_event, "event date YYYY-MM-DD")->required();
  compare->add_option("--pre", c_pre, "pre window as start:end day offsets (default -45:-3)");
  compare->add_option("--post", c_post, "post window as start:end day offsets (default 3:45)");
  compare->add_option("--feature", c_features, "feature column (repeatable; default: core set)");
  compare->add_option("--out", c_out, "output CSV path");

  // dash
  auto* dash = app.add_subcommand("dash", "render a dashboard HTML file");
  std::string d_kind, d_out, d_date;
  int d_days = 90;
  std::int64_t d_now = -1;
  dash->add_option("--kind", d_kind, "collection|completion|clinician|anomaly")->required();
  dash->add_option("--out", d_out, "output HTML path")->required();
  dash->add_option("--date", d_date, "reference day YYYY-MM-DD (default: latest in data)");
  dash->add_option("--days", d_days, "completion window length")->check(CLI::PositiveNumber);
  dash->add_option("--now-ms", d_now, "collection reference clock (default: derived from data)");

  // export
  auto* exp = app.add_subcommand("export", "resample one series for plotting");
  std::string e_participant, e_feature, e_interval = "1d", e_stat = "mean", e_out;
  exp->add_option("--participant", e_participant, "participant id")->required();
  exp->add_option("--feature", e_feature, "raw kind or daily column name")->required();
  exp->add_option("--interval", e_interval, "1h|1d|1w");
  exp->add_option("--statistic", e_stat, "max|min|mean|median|std|count");
  exp->add_option("--out", e_out, "output CSV path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (keygen->parsed()) return cmd_keygen(kg_seed);
    if (onboard->parsed()) return cmd_onboard(root, ob_id, ob_phone, ob_enroll, ob_visits, ob_api);
    if (gen->parsed())
      return cmd_gen(g_out.empty() ? root : g_out, g_participants, g_days, g_lockdown, g_seed,
                     g_start);
    if (sync->parsed()) return cmd_sync(root, s_participant, s_date, s_mock, s_api);
    if (run->parsed()) return cmd_run(root, r_stage, r_jobs);
    if (anomaly->parsed()) return cmd_anomaly(root, a_participant, a_date);
    if (compare->parsed()) return cmd_compare(root, c_event, c_pre, c_post, c_features, c_out);
    if (dash->parsed()) return cmd_dash(root, d_kind, d_out, d_date, d_days, d_now);
    if (exp->parsed())
      return cmd_export(root, e_participant, e_feature, e_interval, e_stat, e_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
