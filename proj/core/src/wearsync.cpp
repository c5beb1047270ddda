#include "pheno/wearsync.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "pheno/csv.hpp"
#include "pheno/error.hpp"
#include "pheno/records.hpp"

namespace pheno {

using nlohmann::json;

// ---------------------------------------------------------------- client

struct WearClient::Impl {
  std::string base;
};

WearClient::WearClient(std::string api_base) : impl_(new Impl{std::move(api_base)}) {}
WearClient::~WearClient() = default;

namespace {

// Deterministic stand-in for "when the hourly sync ran": one hour past the
// day's end. Keeps kill-and-rerun stores byte-identical.
std::int64_t synced_stamp(std::int64_t day_utc) { return day_utc + kMsPerDay + 3600000; }

void store_series(const StudyLayout& layout, const StudyConfig& cfg, const Participant& p,
                  Kind kind, std::int64_t day_utc, const std::string& day_str,
                  const std::string& csv_text, size_t samples, std::int64_t wake_ms) {
  Bytes chunk =
      encrypt_chunk(Bytes(csv_text.begin(), csv_text.end()), p.public_key, cfg.compress_uploads);
  const char* kname = kind_name(kind);
  fs::path dir = layout.raw_kind(p.id, kname);
  write_file_atomic(dir / (std::to_string(day_utc) + ".csv" + kChunkExtension), chunk);
  std::string meta = std::string("{\"kind\":\"") + kname + "\",\"day\":\"" + day_str +
                     "\",\"samples\":" + std::to_string(samples) +
                     ",\"synced_ms\":" + std::to_string(synced_stamp(day_utc));
  if (wake_ms >= 0) meta += ",\"wake_ms\":" + std::to_string(wake_ms);
  meta += "}";
  write_file_atomic(dir / (std::to_string(day_utc) + ".meta.json"), meta);
}

std::string series_csv(Kind kind, int tz, std::int64_t day_utc, const json& body,
                       size_t& samples, std::int64_t& wake_ms) {
  std::string out;
  auto header = kind_header(kind);
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  samples = 0;
  wake_ms = -1;
  if (kind == Kind::sleep) {
    if (!body.contains("segments")) return out;
    for (const auto& seg : body["segments"]) {
      std::int64_t start = seg.at(0).get<std::int64_t>();
      std::string stage = seg.at(1).get<std::string>();
      int dur = seg.at(2).get<int>();
      append_i64(out, start);
      out += ',';
      append_i64(out, tz);
      out += ',';
      out += stage + "," + std::to_string(dur) + "\n";
      wake_ms = std::max(wake_ms, start + static_cast<std::int64_t>(dur) * 1000);
      ++samples;
    }
    return out;
  }
  if (!body.contains("samples")) return out;
  for (const auto& s : body["samples"]) {
    std::int64_t off = s.at(0).get<std::int64_t>();
    std::int64_t v = s.at(1).get<std::int64_t>();
    append_i64(out, day_utc + off * 1000);
    out += ',';
    append_i64(out, tz);
    out += ',';
    append_i64(out, v);
    out += '\n';
    ++samples;
  }
  return out;
}

}  // namespace

SyncReport WearClient::poll_participant(const StudyLayout& layout, const StudyConfig& cfg,
                                        Registry& reg, const std::string& participant,
                                        CivilDay day) {
  Participant& p = reg.find(participant);
  const std::string day_str = format_day(day);
  const std::int64_t day_utc =
      day_serial(day) * kMsPerDay - static_cast<std::int64_t>(cfg.tz_offset_min) * 60000;

  httplib::Client cli(impl_->base);
  cli.set_connection_timeout(5, 0);
  cli.set_read_timeout(10, 0);

  bool refreshed = false;
  auto refresh = [&]() {
    auto res = cli.Post("/oauth/token",
                        "grant_type=refresh_token&refresh_token=" + p.tokens.refresh_token,
                        "application/x-www-form-urlencoded");
    if (!res) throw Error(Errc::NetworkError, "token endpoint unreachable");
    if (res->status != 200)
      throw Error(Errc::AuthPermanentFailure,
                  "refresh rejected with HTTP " + std::to_string(res->status));
    json body = json::parse(res->body);
    p.tokens.access_token = body.at("access_token").get<std::string>();
    if (body.contains("refresh_token"))
      p.tokens.refresh_token = body["refresh_token"].get<std::string>();
    if (body.contains("expires_in"))
      p.tokens.expires_at = synced_stamp(day_utc) / 1000 + body["expires_in"].get<std::int64_t>();
  };

  auto fetch = [&](const char* kind) -> json {
    for (;;) {
      httplib::Headers h = {{"Authorization", "Bearer " + p.tokens.access_token}};
      auto res = cli.Get("/1/user/" + participant + "/" + kind + "/date/" + day_str + ".json", h);
      if (!res) throw Error(Errc::NetworkError, "GET " + std::string(kind) + " failed");
      if (res->status == 401) {
        if (refreshed)
          throw Error(Errc::AuthPermanentFailure, "unauthorized after token refresh");
        refresh();
        refreshed = true;
        continue;
      }
      if (res->status == 404)
        throw Error(Errc::UnknownParticipant, participant + " unknown to wearable cloud");
      if (res->status != 200)
        throw Error(Errc::NetworkError, "HTTP " + std::to_string(res->status));
      return json::parse(res->body);
    }
  };

  SyncReport report;
  for (Kind kind : {Kind::heart, Kind::steps, Kind::sleep}) {
    json body = fetch(kind_name(kind));
    size_t samples = 0;
    std::int64_t wake_ms = -1;
    std::string csv_text = series_csv(kind, cfg.tz_offset_min, day_utc, body, samples, wake_ms);
    if (samples == 0) {
      report.partial = true;
      report.missing_kinds.push_back(kind_name(kind));
      continue;
    }
    store_series(layout, cfg, p, kind, day_utc, day_str, csv_text, samples, wake_ms);
    ++report.series_stored;
  }
  return report;
}

// ---------------------------------------------------------------- server

struct MockServer::Impl {
  httplib::Server svr;
  std::thread th;
  int port = 0;
  fs::path dir;
  std::mutex mu;
  std::map<std::string, std::pair<std::string, std::string>> tokens;  // pid -> access, refresh
  std::map<std::string, int> rotations;
  std::atomic<int> refreshes{0};
};

MockServer::MockServer(const std::string& fixture_dir, int port) : impl_(new Impl) {
  impl_->dir = fixture_dir;
  fs::path tok = impl_->dir / "tokens.json";
  if (fs::exists(tok)) {
    json t = json::parse(read_file(tok));
    for (auto it = t.begin(); it != t.end(); ++it)
      impl_->tokens[it.key()] = {it.value().at("access_token").get<std::string>(),
                                 it.value().at("refresh_token").get<std::string>()};
  }

  auto* impl = impl_.get();
  impl->svr.Get(R"(/1/user/([^/]+)/([^/]+)/date/([^/]+)\.json)",
                [impl](const httplib::Request& req, httplib::Response& res) {
                  std::string pid = req.matches[1];
                  std::string kind = req.matches[2];
                  std::string day = req.matches[3];
                  std::lock_guard<std::mutex> lock(impl->mu);
                  auto it = impl->tokens.find(pid);
                  if (it == impl->tokens.end()) {
                    res.status = 404;
                    res.set_content("{\"errors\":[{\"errorType\":\"not_found\"}]}",
                                    "application/json");
                    return;
                  }
                  if (req.get_header_value("Authorization") != "Bearer " + it->second.first) {
                    res.status = 401;
                    res.set_content("{\"errors\":[{\"errorType\":\"expired_token\"}]}",
                                    "application/json");
                    return;
                  }
                  fs::path f = impl->dir / pid / kind / (day + ".json");
                  if (fs::exists(f)) {
                    res.set_content(read_file(f), "application/json");
                  } else {
                    std::string empty = kind == "sleep"
                                            ? "{\"kind\":\"sleep\",\"day\":\"" + day +
                                                  "\",\"segments\":[]}"
                                            : "{\"kind\":\"" + kind + "\",\"day\":\"" + day +
                                                  "\",\"samples\":[]}";
                    res.set_content(empty, "application/json");
                  }
                });

  impl->svr.Post("/oauth/token", [impl](const httplib::Request& req, httplib::Response& res) {
    impl->refreshes.fetch_add(1);
    std::string grant = req.get_param_value("grant_type");
    std::string rt = req.get_param_value("refresh_token");
    std::lock_guard<std::mutex> lock(impl->mu);
    if (grant == "refresh_token") {
      for (auto& [pid, tks] : impl->tokens) {
        if (tks.second == rt) {
          int n = ++impl->rotations[pid];
          tks.first = "at-" + pid + "-" + std::to_string(n);
          res.set_content("{\"access_token\":\"" + tks.first + "\",\"refresh_token\":\"" + rt +
                              "\",\"expires_in\":3600}",
                          "application/json");
          return;
        }
      }
    }
    res.status = 400;
    res.set_content("{\"errors\":[{\"errorType\":\"invalid_grant\"}]}", "application/json");
  });

  if (port == 0) {
    impl->port = impl->svr.bind_to_any_port("127.0.0.1");
  } else {
    if (!impl->svr.bind_to_port("127.0.0.1", port))
      throw Error(Errc::NetworkError, "cannot bind 127.0.0.1:" + std::to_string(port));
    impl->port = port;
  }
  impl->th = std::thread([impl] { impl->svr.listen_after_bind(); });
  impl->svr.wait_until_ready();
}

MockServer::~MockServer() {
  impl_->svr.stop();
  if (impl_->th.joinable()) impl_->th.join();
}

int MockServer::port() const { return impl_->port; }
std::string MockServer::base_url() const {
  return "http://127.0.0.1:" + std::to_string(impl_->port);
}
int MockServer::refresh_count() const { return impl_->refreshes.load(); }

// ---------------------------------------------------------------- fixtures

std::string intraday_json(const std::string& kind, const std::string& day,
                          const std::vector<std::pair<std::int64_t, std::int64_t>>& samples) {
  std::string out = "{\"kind\":\"" + kind + "\",\"day\":\"" + day + "\",\"samples\":[";
  for (size_t i = 0; i < samples.size(); ++i) {
    if (i) out += ',';
    out += "[" + std::to_string(samples[i].first) + "," + std::to_string(samples[i].second) + "]";
  }
  out += "]}";
  return out;
}

std::string sleep_json(const std::string& day,
                       const std::vector<std::tuple<std::int64_t, std::string, int>>& segments) {
  std::string out = "{\"kind\":\"sleep\",\"day\":\"" + day + "\",\"segments\":[";
  for (size_t i = 0; i < segments.size(); ++i) {
    if (i) out += ',';
    out += "[" + std::to_string(std::get<0>(segments[i])) + ",\"" + std::get<1>(segments[i]) +
           "\"," + std::to_string(std::get<2>(segments[i])) + "]";
  }
  out += "]}";
  return out;
}

}  // namespace pheno
