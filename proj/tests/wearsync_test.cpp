#include <algorithm>
#include <filesystem>
#include <map>

#include <doctest.h>

#include "pheno/crypto.hpp"
#include "pheno/error.hpp"
#include "pheno/layout.hpp"
#include "pheno/registry.hpp"
#include "pheno/time.hpp"
#include "pheno/wearsync.hpp"
#include "support/temp.hpp"

using namespace pheno;
using testsupport::TempDir;

namespace {

struct Harness {
  TempDir store{"wear-store"};
  TempDir fixtures{"wear-fix"};
  StudyLayout lay;
  StudyConfig cfg;
  Registry reg;
  KeyPair kp;
  std::string pid = "WEARUSER01";

  Harness() {
    lay.root = store.path();
    lay.study = "hopes";
    kp = generate_keypair(Bytes{4, 4, 4});
    Participant p;
    p.id = pid;
    p.public_key = kp.public_key;
    p.contact_salt = Bytes(16, 1);
    p.enrollment_date = "2020-01-06";
    p.visit_dates = {"2020-01-06"};
    p.credential_secret = "cred-1";
    p.tokens = {"tok-fresh", "refresh-ok", 4102444800};  // far future
    reg.add(p);
    std::filesystem::create_directories(lay.keystore_dir());
    write_file_atomic(lay.keystore_dir() / (pid + ".key"), to_hex(kp.private_key));
  }

  void fixture_tokens(const std::string& access, const std::string& refresh) {
    write_file_atomic(fixtures.path() / "tokens.json",
                      std::string("{\"") + pid + "\":{\"access_token\":\"" + access +
                          "\",\"refresh_token\":\"" + refresh + "\"}}");
  }

  void fixture_day(const std::string& kind, const std::string& day, int samples) {
    std::vector<std::pair<std::int64_t, std::int64_t>> s;
    for (int i = 0; i < samples; ++i) s.emplace_back(i * 5, 60 + i % 30);
    auto dir = fixtures.path() / pid / kind;
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / (day + ".json"), intraday_json(kind, day, s));
  }

  void fixture_sleep(const std::string& day) {
    std::vector<std::tuple<std::int64_t, std::string, int>> segs{
        {1578268800000 + 23LL * 3600'000, "light", 3600 * 7},
    };
    auto dir = fixtures.path() / pid / "sleep";
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / (day + ".json"), sleep_json(day, segs));
  }

  std::map<std::string, std::vector<std::string>> stored_files() const {
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& kind : list_dirs(lay.raw_participant(pid)))
      out[kind] = list_files(lay.raw_kind(pid, kind));
    return out;
  }
};

}  // namespace

TEST_CASE("fresh token: three series stored with metadata") {
  Harness h;
  h.fixture_tokens("tok-fresh", "refresh-ok");
  h.fixture_day("heart", "2020-01-06", 17280);
  h.fixture_day("steps", "2020-01-06", 1440);
  h.fixture_sleep("2020-01-06");

  MockServer server(h.fixtures.path().string(), 0);
  WearClient client(server.base_url());
  auto report = client.poll_participant(h.lay, h.cfg, h.reg, h.pid, parse_day("2020-01-06"));
  CHECK(report.series_stored == 3);
  CHECK(!report.partial);
  CHECK(report.missing_kinds.empty());
  CHECK(server.refresh_count() == 0);

  auto files = h.stored_files();
  REQUIRE(files.count("heart"));
  REQUIRE(files.count("steps"));
  REQUIRE(files.count("sleep"));
  // chunk + meta per kind
  for (const auto& kind : {"heart", "steps", "sleep"}) {
    bool chunk = false, meta = false;
    for (const auto& f : files[kind]) {
      if (f.find(".csv.hcz") != std::string::npos) chunk = true;
      if (f.find(".meta.json") != std::string::npos) meta = true;
    }
    CHECK_MESSAGE(chunk, kind);
    CHECK_MESSAGE(meta, kind);
  }

  // stored heart chunk decrypts to 17280 rows
  auto heart_dir = h.lay.raw_kind(h.pid, "heart");
  for (const auto& f : files["heart"]) {
    if (f.find(".csv.hcz") == std::string::npos) continue;
    auto plain = decrypt_chunk(read_file_bytes(heart_dir / f), h.kp.private_key);
    std::string text(plain.begin(), plain.end());
    CHECK(std::count(text.begin(), text.end(), '\n') == 17281);
  }
}

TEST_CASE("expired token refreshes exactly once and succeeds") {
  Harness h;
  h.reg.find(h.pid).tokens = {"tok-stale", "refresh-ok", 1};  // expired long ago
  h.fixture_tokens("tok-valid", "refresh-ok");
  h.fixture_day("heart", "2020-01-06", 100);
  h.fixture_day("steps", "2020-01-06", 100);
  h.fixture_sleep("2020-01-06");

  MockServer server(h.fixtures.path().string(), 0);
  WearClient client(server.base_url());
  auto report = client.poll_participant(h.lay, h.cfg, h.reg, h.pid, parse_day("2020-01-06"));
  CHECK(report.series_stored == 3);
  CHECK(server.refresh_count() == 1);
  // the server mints a fresh access token; the stale one must be replaced
  CHECK(h.reg.find(h.pid).tokens.access_token != "tok-stale");
  CHECK(!h.reg.find(h.pid).tokens.access_token.empty());
}

TEST_CASE("rejected refresh is a permanent auth failure") {
  Harness h;
  h.reg.find(h.pid).tokens = {"tok-stale", "refresh-wrong", 1};
  h.fixture_tokens("tok-valid", "refresh-ok");
  h.fixture_day("heart", "2020-01-06", 10);

  MockServer server(h.fixtures.path().string(), 0);
  WearClient client(server.base_url());
  try {
    client.poll_participant(h.lay, h.cfg, h.reg, h.pid, parse_day("2020-01-06"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AuthPermanentFailure);
  }
}

TEST_CASE("unknown participant surfaces as NetworkError with the status") {
  Harness h;
  h.fixture_tokens("tok-fresh", "refresh-ok");
  MockServer server(h.fixtures.path().string(), 0);
  WearClient client(server.base_url());
  Participant ghost;
  ghost.id = "GHOSTUSER0";
  ghost.public_key = h.kp.public_key;
  ghost.contact_salt = Bytes(16, 2);
  ghost.tokens = {"tok-fresh", "r", 4102444800};
  h.reg.add(ghost);
  CHECK_THROWS_AS(
      client.poll_participant(h.lay, h.cfg, h.reg, "GHOSTUSER0", parse_day("2020-01-06")),
      Error);
}

TEST_CASE("partial day: present series stored, missing ones reported") {
  Harness h;
  h.fixture_tokens("tok-fresh", "refresh-ok");
  h.fixture_day("heart", "2020-01-06", 500);
  // steps and sleep fixtures absent for the day

  MockServer server(h.fixtures.path().string(), 0);
  WearClient client(server.base_url());
  auto report = client.poll_participant(h.lay, h.cfg, h.reg, h.pid, parse_day("2020-01-06"));
  CHECK(report.series_stored == 1);
  CHECK(report.partial);
  REQUIRE(report.missing_kinds.size() == 2);
  CHECK(std::find(report.missing_kinds.begin(), report.missing_kinds.end(), "steps") !=
        report.missing_kinds.end());
  CHECK(std::find(report.missing_kinds.begin(), report.missing_kinds.end(), "sleep") !=
        report.missing_kinds.end());

  auto files = h.stored_files();
  CHECK(files.count("heart"));
  CHECK(!files.count("steps"));
}

TEST_CASE("kill-and-rerun leaves the store identical to one clean run") {
  StudyConfig cfg;
  auto run = [&](bool twice) {
    Harness h;
    h.fixture_tokens("tok-fresh", "refresh-ok");
    h.fixture_day("heart", "2020-01-06", 1000);
    h.fixture_day("steps", "2020-01-06", 700);
    h.fixture_sleep("2020-01-06");
    MockServer server(h.fixtures.path().string(), 0);
    WearClient client(server.base_url());
    client.poll_participant(h.lay, cfg, h.reg, h.pid, parse_day("2020-01-06"));
    if (twice)
      client.poll_participant(h.lay, cfg, h.reg, h.pid, parse_day("2020-01-06"));
    // decrypt everything into a stable map (ciphertexts are randomized, so
    // compare plaintext and metadata bytes)
    std::map<std::string, std::string> content;
    for (const auto& kind : list_dirs(h.lay.raw_participant(h.pid))) {
      for (const auto& f : list_files(h.lay.raw_kind(h.pid, kind))) {
        auto p = h.lay.raw_kind(h.pid, kind) / f;
        if (f.find(".csv.hcz") != std::string::npos) {
          auto plain = decrypt_chunk(read_file_bytes(p), h.kp.private_key);
          content[kind + "/" + f] = std::string(plain.begin(), plain.end());
        } else {
          content[kind + "/" + f] = read_file(p);
        }
      }
    }
    return content;
  };
  auto once = run(false);
  auto again = run(true);
  CHECK(once == again);
  REQUIRE(!once.empty());
}

TEST_CASE("fixture payload helpers emit parseable json") {
  auto j = intraday_json("heart", "2020-01-06", {{0, 70}, {5, 72}});
  CHECK(j.find("2020-01-06") != std::string::npos);
  CHECK(j.find("70") != std::string::npos);
  auto s = sleep_json("2020-01-06", {{1578268800000LL, "light", 3600}});
  CHECK(s.find("light") != std::string::npos);
}
