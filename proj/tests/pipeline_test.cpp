#include <algorithm>
#include <string>

#include <doctest.h>

#include "pheno/crypto.hpp"
#include "pheno/gzio.hpp"
#include "pheno/layout.hpp"
#include "pheno/pipeline.hpp"
#include "support/temp.hpp"

using namespace pheno;
using testsupport::TempDir;

namespace {

struct MiniStudy {
  TempDir tmp{"pipeline"};
  StudyLayout lay;
  StudyConfig cfg;
  KeyPair kp;
  std::string pid = "TESTUSER01";

  MiniStudy() {
    lay.root = tmp.path();
    lay.study = "hopes";
    cfg.study_name = "hopes";
    kp = generate_keypair(Bytes{9, 9, 9});
    std::filesystem::create_directories(lay.keystore_dir());
    write_file_atomic(lay.keystore_dir() / (pid + ".key"), to_hex(kp.private_key));
  }

  void upload(const std::string& kind, const std::string& stem, const std::string& csv) {
    Bytes plain(csv.begin(), csv.end());
    auto chunk = encrypt_chunk(plain, kp.public_key, true);
    auto dir = lay.raw_kind(pid, kind);
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / (stem + ".csv.hcz"), chunk);
  }
};

// 2020-03-10 00:00 UTC in epoch seconds (to exercise the seconds->ms patch)
constexpr std::int64_t kDaySec = 1583798400;

std::string stage3_text(const MiniStudy& s, const std::string& kind) {
  auto p = s.lay.stage_study(3) / s.pid / (kind + ".csv");
  return read_file(p);
}

std::string stage4_text(const MiniStudy& s, const std::string& kind) {
  auto p = s.lay.stage_study(4) / s.pid / (kind + ".csv");
  return read_file(p);
}

}  // namespace

TEST_CASE("six stages on a hand-built store") {
  MiniStudy s;

  // steps: duplicate rows across two chunks, one wrong-arity row, seconds ts
  s.upload("steps", "1583798400000",
           "timestamp,tz_offset,steps\n" +
               std::to_string(kDaySec) + ",480,12\n" +           // seconds -> patched
               std::to_string(kDaySec * 1000 + 60000) + ",480,9\n");
  s.upload("steps", "1583798460000",
           "timestamp,tz_offset,steps\n" +
               std::to_string(kDaySec * 1000 + 60000) + ",480,9\n" +  // exact duplicate
               std::to_string(kDaySec * 1000 + 120000) + ",480\n" +   // wrong arity
               std::to_string(kDaySec * 1000 + 180000) + ",480,20\n");

  // light: value beyond the sensor ceiling must clamp at stage 4
  s.upload("light", "1583798400000",
           "timestamp,tz_offset,lux\n" +
               std::to_string(kDaySec * 1000) + ",480,70000.5\n" +
               std::to_string(kDaySec * 1000 + 1000) + ",480,123.25\n");

  // taps: stage 4 appends the app_group column
  s.upload("tapsLog", "1583798400000",
           "timestamp,tz_offset,package,orientation\n" +
               std::to_string(kDaySec * 1000) + ",480,com.whatsapp,0\n" +
               std::to_string(kDaySec * 1000 + 500) + ",480,com.mojang.minecraftpe,0\n");

  // heart for wearing inference
  s.upload("heart", "1583798400000",
           "timestamp,tz_offset,bpm\n" +
               std::to_string(kDaySec * 1000) + ",480,72\n" +
               std::to_string(kDaySec * 1000 + 5000) + ",480,75\n");

  auto reports = run_pipeline(s.lay, s.cfg);
  REQUIRE(reports.size() == 6);
  CHECK(reports[0].stage == 1);
  CHECK(reports[0].files_in == 5);
  CHECK(reports[0].files_out == 5);
  CHECK(reports[2].duplicates_removed == 1);
  CHECK(reports[2].rows_dropped == 1);

  auto steps = stage3_text(s, "steps");
  CHECK(steps.find(",12") != std::string::npos);
  // duplicate row appears exactly once
  auto dup_row = std::to_string(kDaySec * 1000 + 60000) + ",480,9\n";
  auto once = steps.find(dup_row);
  REQUIRE(once != std::string::npos);
  CHECK(steps.find(dup_row, once + 1) == std::string::npos);
  // seconds-unit timestamp patched to ms
  CHECK(steps.find(std::to_string(kDaySec * 1000) + ",480,12") != std::string::npos);

  auto light = stage4_text(s, "light");
  CHECK(light.find("70000.5") == std::string::npos);
  CHECK(light.find("65535") != std::string::npos);
  CHECK(light.find("123.25") != std::string::npos);

  auto taps = stage4_text(s, "tapsLog");
  CHECK(taps.find("app_group") != std::string::npos);
  CHECK(taps.find("com.whatsapp,0,social messenger") != std::string::npos);
  CHECK(taps.find("com.mojang.minecraftpe,0,games") != std::string::npos);

  // stage 5 family tables exist for uploaded kinds
  CHECK(std::filesystem::exists(s.lay.stage_study(5) / s.pid / "steps.csv.gz"));
  CHECK(std::filesystem::exists(s.lay.stage_study(5) / s.pid / "light.csv.gz"));

  // stage 6 joined table has the full manifest width on the data day
  auto daily = gzip_decompress(read_file_bytes(s.lay.daily_gz(s.pid)));
  auto first_nl = daily.find('\n');
  auto header = daily.substr(0, first_nl);
  size_t cols = 1 + static_cast<size_t>(std::count(header.begin(), header.end(), ','));
  CHECK(cols == 730);  // date + 729 features
  CHECK(daily.find("2020-03-10") != std::string::npos);
  CHECK(std::filesystem::exists(s.lay.manifest_json()));
  CHECK(std::filesystem::exists(s.lay.reconciliation_md()));

  // rerun: nothing to do anywhere
  auto again = run_pipeline(s.lay, s.cfg);
  for (const auto& r : again) {
    CHECK(r.files_in == 0);
    CHECK(r.files_out == 0);
  }

  // new upload reprocesses only the affected pieces
  s.upload("steps", "1583798800000",
           "timestamp,tz_offset,steps\n" +
               std::to_string(kDaySec * 1000 + 240000) + ",480,31\n");
  auto third = run_pipeline(s.lay, s.cfg);
  CHECK(third[0].files_in == 1);
  CHECK(third[0].files_out == 1);
  CHECK(third[2].files_out >= 1);
  auto steps2 = stage3_text(s, "steps");
  CHECK(steps2.find(",31") != std::string::npos);
}

TEST_CASE("missing key degrades to skipped files") {
  MiniStudy s;
  auto other = generate_keypair(Bytes{1});
  // second participant with no keystore entry
  std::string ghost = "GHOSTUSER0";
  Bytes plain;
  {
    std::string csv = "timestamp,tz_offset,bpm\n1583798400000,480,70\n";
    plain.assign(csv.begin(), csv.end());
  }
  auto dir = s.lay.raw_kind(ghost, "heart");
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "1583798400000.csv.hcz",
                    encrypt_chunk(plain, other.public_key, true));

  auto reports = run_pipeline(s.lay, s.cfg, 1, 1);
  CHECK(reports[0].files_in == 1);
  CHECK(reports[0].files_out == 0);
  CHECK(!std::filesystem::exists(s.lay.stage_study(1) / ghost / "heart"));
}

TEST_CASE("corrupt chunk skipped, good files still land") {
  MiniStudy s;
  s.upload("heart", "1583798400000",
           "timestamp,tz_offset,bpm\n1583798400000,480,70\n");
  auto dir = s.lay.raw_kind(s.pid, "heart");
  Bytes garbage{'H', 'O', 'P', 'E', 1, 0, 1, 0, 4, 1, 2, 3, 4};
  garbage.resize(80, 9);
  write_file_atomic(dir / "1583798500000.csv.hcz", garbage);

  auto reports = run_pipeline(s.lay, s.cfg, 1, 1);
  CHECK(reports[0].files_in == 2);
  CHECK(reports[0].files_out == 1);
}

TEST_CASE("empty study produces six empty reports") {
  TempDir tmp("empty");
  StudyLayout lay{tmp.path(), "hopes"};
  StudyConfig cfg;
  auto reports = run_pipeline(lay, cfg);
  REQUIRE(reports.size() == 6);
  for (const auto& r : reports) {
    CHECK(r.files_in == 0);
    CHECK(r.rows_dropped == 0);
    // stage 6 still materializes the manifest artifacts once
    CHECK(r.files_out == (r.stage == 6 ? 2 : 0));
  }
  CHECK(std::filesystem::exists(lay.manifest_json()));
  auto again = run_pipeline(lay, cfg);
  for (const auto& r : again) CHECK(r.files_out == 0);
}

TEST_CASE("stage bounds validated") {
  TempDir tmp("bounds");
  StudyLayout lay{tmp.path(), "hopes"};
  StudyConfig cfg;
  CHECK_THROWS(run_pipeline(lay, cfg, 0, 3));
  CHECK_THROWS(run_pipeline(lay, cfg, 2, 9));
  CHECK_THROWS(run_pipeline(lay, cfg, 4, 2));
}

TEST_CASE("single-stage runs compose to the full pipeline") {
  MiniStudy s;
  s.upload("steps", "1583798400000",
           "timestamp,tz_offset,steps\n1583798400000,480,44\n");
  for (int k = 1; k <= 6; ++k) {
    auto r = run_pipeline(s.lay, s.cfg, k, k);
    REQUIRE(r.size() == 1);
    CHECK(r[0].stage == k);
  }
  CHECK(std::filesystem::exists(s.lay.daily_gz(s.pid)));
  auto steps = stage3_text(s, "steps");
  CHECK(steps.find(",44") != std::string::npos);
}
