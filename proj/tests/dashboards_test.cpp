#include <cmath>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "pheno/dashboards.hpp"
#include "pheno/layout.hpp"
#include "pheno/time.hpp"

using namespace pheno;

namespace {
const StudyConfig C = StudyConfig{};
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Golden files live next to the test sources; regenerate by deleting them
// and re-running, then review the diff.
std::filesystem::path golden_dir() {
  return std::filesystem::path(GOLDEN_DIR);
}

void check_golden(const std::string& name, const std::string& got) {
  auto path = golden_dir() / name;
  if (!std::filesystem::exists(path)) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary) << got;
    MESSAGE("golden file created: ", path.string());
    return;
  }
  auto want = read_file(path);
  CHECK_MESSAGE(got == want, "render differs from ", name);
}

ParticipantMeta meta_at(std::int64_t now_ms, double age_hours) {
  ParticipantMeta m;
  m.id = "AAAAAAAAA1";
  m.phone_model = "Pixel 4";
  m.enrollment_date = "2020-01-06";
  m.visit_dates = {"2020-01-06"};
  std::int64_t t = now_ms - static_cast<std::int64_t>(age_hours * 3'600'000);
  m.last_location_ms = t;
  m.last_sociability_ms = t;
  m.last_taps_ms = t;
  m.last_phone_upload_ms = t;
  m.last_wearable_upload_ms = t;
  m.last_wake_ms = t;
  return m;
}

}  // namespace

TEST_CASE("freshness boundaries are exact") {
  CHECK(freshness_class(0, C) == "green");
  CHECK(freshness_class(23.999, C) == "green");
  CHECK(freshness_class(24.0, C) == "orange");
  CHECK(freshness_class(95.999, C) == "orange");
  CHECK(freshness_class(96.0, C) == "red");
  CHECK(freshness_class(5000, C) == "red");
}

TEST_CASE("severity buckets include the max edge") {
  CHECK(severity_class(0.0, C) == "");
  CHECK(severity_class(0.5, C) == "");
  CHECK(severity_class(0.7999, C) == "");
  CHECK(severity_class(0.8, C) == "mild");
  CHECK(severity_class(0.8999, C) == "mild");
  CHECK(severity_class(0.9, C) == "high");
  CHECK(severity_class(0.9999, C) == "high");
  CHECK(severity_class(1.0, C) == "max");
  CHECK(severity_class(kNan, C) == "");
}

TEST_CASE("payment progress against the 22-hour day") {
  // 11 h per day over 10 days = half the target
  CHECK(payment_progress(110, 10, 22) == doctest::Approx(50.0));
  CHECK(payment_progress(220, 10, 22) == doctest::Approx(100.0));
  CHECK(payment_progress(500, 10, 22) == doctest::Approx(100.0));  // capped
  CHECK(payment_progress(0, 10, 22) == doctest::Approx(0.0));
}

TEST_CASE("collection rows carry the boundary colors") {
  std::int64_t now = 1'600'000'000'000;
  auto html24 = render_collection({meta_at(now, 24.0)}, now, C);
  CHECK(html24.find("orange") != std::string::npos);
  CHECK(html24.find("AAAAAAAAA1") != std::string::npos);
  auto html96 = render_collection({meta_at(now, 96.0)}, now, C);
  CHECK(html96.find("red") != std::string::npos);
  auto html1 = render_collection({meta_at(now, 1.0)}, now, C);
  CHECK(html1.find("green") != std::string::npos);
}

TEST_CASE("collection is self-contained html") {
  std::int64_t now = 1'600'000'000'000;
  auto html = render_collection({meta_at(now, 2)}, now, C);
  CHECK(html.find("<html") != std::string::npos);
  CHECK(html.find("<style") != std::string::npos);
  CHECK(html.find("src=\"http") == std::string::npos);
  CHECK(html.find("href=\"http") == std::string::npos);
}

TEST_CASE("anomaly cells: 1.0 is max severity, missing renders nan") {
  ScoreTable t;
  DayScores d;
  d.multivariate = 1.0;
  d.features = std::vector<double>(12, kNan);
  d.features[3] = 0.95;
  d.features[5] = 0.85;
  d.features[7] = 0.2;
  t["AAAAAAAAA1"][18345] = d;
  auto html = render_anomaly(t, 18345, C);
  CHECK(html.find("max") != std::string::npos);
  CHECK(html.find("1.0000") != std::string::npos);
  CHECK(html.find("nan") != std::string::npos);
  CHECK(html.find("0.9500") != std::string::npos);
  CHECK(html.find("0.8500") != std::string::npos);
}

TEST_CASE("completion matrix counts render per day") {
  CompletionCounts counts;
  counts["AAAAAAAAA1"]["heart"][18340] = 17280;
  counts["AAAAAAAAA1"]["heart"][18341] = 100;
  counts["AAAAAAAAA1"]["steps"][18341] = 1440;
  auto html = render_completion(counts, 18341, 7);
  CHECK(html.find("17280") != std::string::npos);
  CHECK(html.find("1440") != std::string::npos);
  CHECK(html.find("heart") != std::string::npos);
}

TEST_CASE("clinician windows split at seven-day boundaries") {
  ClinicianSeries series;
  std::int64_t today = 18400;
  // day exactly 7 before today belongs to CW [today-7, today)
  for (int back = 1; back <= 44; ++back) {
    ClinicianDay d;
    d.sleep_hrs = back <= 7 ? 8.0 : (back <= 14 ? 6.0 : 4.0);
    d.sleep_eff = 0.92;
    d.msg_contacts = 3;
    d.calls_over_min = 1;
    d.away_mins = 300;
    d.rog_m = 800;
    series["AAAAAAAAA1"][today - back] = d;
  }
  auto html = render_clinician(series, today, C);
  CHECK(html.find("AAAAAAAAA1") != std::string::npos);
  CHECK(html.find("8.0") != std::string::npos);  // CW mean sleep
  CHECK(html.find("6.0") != std::string::npos);  // PW mean sleep
  CHECK(html.find("4.0") != std::string::npos);  // PM mean sleep
}

TEST_CASE("golden renders stay byte-stable") {
  StudyConfig cfg;
  std::int64_t now = 1'600'000'000'000;

  std::vector<ParticipantMeta> metas;
  auto fresh = meta_at(now, 3.0);
  auto stale = meta_at(now, 40.0);
  stale.id = "BBBBBBBBB2";
  stale.phone_model = "Galaxy S10";
  auto dead = meta_at(now, 200.0);
  dead.id = "CCCCCCCCC3";
  for (auto* m : {&fresh, &stale, &dead}) {
    std::int64_t day = now / kMsPerDay;
    m->heart_samples_by_day[day - 2] = 15000;
    m->heart_samples_by_day[day - 1] = 7920;  // 11 h worn
  }
  metas = {fresh, stale, dead};
  check_golden("collection.html", render_collection(metas, now, cfg));

  CompletionCounts counts;
  for (int d = 0; d < 5; ++d) {
    counts["AAAAAAAAA1"]["heart"][18340 + d] = 17280 - d;
    counts["AAAAAAAAA1"]["gps"][18340 + d] = 800 + d;
    counts["BBBBBBBBB2"]["steps"][18340 + d] = 1440;
  }
  check_golden("completion.html", render_completion(counts, 18344, 7));

  ClinicianSeries series;
  for (int back = 1; back <= 44; ++back) {
    ClinicianDay d;
    d.sleep_hrs = 7.5;
    d.sleep_eff = back <= 7 ? 0.95 : 0.85;
    d.msg_contacts = 4;
    d.calls_over_min = 2;
    d.away_mins = 420;
    d.rog_m = 1200;
    series["AAAAAAAAA1"][18400 - back] = d;
  }
  check_golden("clinician.html", render_clinician(series, 18400, cfg));

  ScoreTable t;
  DayScores d1;
  d1.multivariate = 0.4321;
  d1.features = {0.1, 0.82, 0.91, 1.0, kNan, 0.3, 0.5, 0.65, 0.88, 0.93, 0.2, kNan};
  t["AAAAAAAAA1"][18345] = d1;
  DayScores d2;
  d2.multivariate = kNan;
  d2.features = std::vector<double>(12, 0.05);
  t["BBBBBBBBB2"][18345] = d2;
  check_golden("anomaly.html", render_anomaly(t, 18345, cfg));
}
