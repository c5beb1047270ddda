#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pheno/config.hpp"
#include "pheno/layout.hpp"
#include "pheno/registry.hpp"
#include "pheno/time.hpp"

namespace pheno {

// Result of polling one (participant, day): which wearable series were
// fetched and stored. A day with some-but-not-all series present is flagged
// partial rather than failed; present series are always stored.
struct SyncReport {
  int series_stored = 0;
  bool partial = false;
  std::vector<std::string> missing_kinds;
};

// Wearable-cloud download client. Paths follow
//   GET  /1/user/{id}/{kind}/date/{YYYY-MM-DD}.json   (Bearer auth)
//   POST /oauth/token                                 (refresh grant)
// On a 401 the client refreshes the participant's token exactly once per
// poll and retries; a second 401 (or a rejected refresh) is
// AuthPermanentFailure. Fetched series are encrypted to the participant's
// public key and written atomically, so re-polling a day after a crash
// leaves the store byte-identical to a single clean run.
class WearClient {
 public:
  explicit WearClient(std::string api_base);
  ~WearClient();

  // Fetches heart/steps/sleep for the day, writes raw chunks + metadata,
  // updates reg tokens in place on refresh. Throws NetworkError /
  // AuthPermanentFailure.
  SyncReport poll_participant(const StudyLayout& layout, const StudyConfig& cfg,
                              Registry& reg, const std::string& participant, CivilDay day);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Embedded deterministic stand-in for the wearable cloud, serving JSON
// fixtures from a directory:
//   <dir>/tokens.json                      {"<pid>": {"access_token":..,"refresh_token":..}}
//   <dir>/<pid>/<kind>/<YYYY-MM-DD>.json   intraday payload
// Unknown participants get 404; an unknown refresh token gets 400; a GET
// with a stale access token gets 401. Missing day files return an empty
// series (exercising the PartialDay path).
class MockServer {
 public:
  // Binds 127.0.0.1 on `port`, or an ephemeral port when port == 0.
  MockServer(const std::string& fixture_dir, int port);
  ~MockServer();
  int port() const;
  std::string base_url() const;
  int refresh_count() const;  // POSTs to /oauth/token observed

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Fixture payload helpers (shared by tests and the CLI's demo fixtures).
// heart/steps: samples = (offset_s, value); sleep: (start_ms, stage, dur_s).
std::string intraday_json(const std::string& kind, const std::string& day,
                          const std::vector<std::pair<std::int64_t, std::int64_t>>& samples);
std::string sleep_json(const std::string& day,
                       const std::vector<std::tuple<std::int64_t, std::string, int>>& segments);

}  // namespace pheno
