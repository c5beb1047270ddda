#include "pheno/records.hpp"

#include "pheno/error.hpp"

namespace pheno {

const std::array<Kind, kKindCount>& all_kinds() {
  static const std::array<Kind, kKindCount> kinds = {
      Kind::accel,          Kind::accessibilityLog, Kind::callLog, Kind::gps,
      Kind::heart,          Kind::light,            Kind::powerState, Kind::sleep,
      Kind::sociabilityCallLog, Kind::sociabilityLog, Kind::steps, Kind::tapsLog,
      Kind::textsLog};
  return kinds;
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::accel: return "accel";
    case Kind::accessibilityLog: return "accessibilityLog";
    case Kind::callLog: return "callLog";
    case Kind::gps: return "gps";
    case Kind::heart: return "heart";
    case Kind::light: return "light";
    case Kind::powerState: return "powerState";
    case Kind::sleep: return "sleep";
    case Kind::sociabilityCallLog: return "sociabilityCallLog";
    case Kind::sociabilityLog: return "sociabilityLog";
    case Kind::steps: return "steps";
    case Kind::tapsLog: return "tapsLog";
    case Kind::textsLog: return "textsLog";
  }
  return "?";
}

Kind kind_from_name(const std::string& name) {
  for (Kind k : all_kinds())
    if (name == kind_name(k)) return k;
  throw Error(Errc::UnknownKind, name);
}

std::vector<std::string> kind_header(Kind k) {
  std::vector<std::string> h = {"timestamp", "tz_offset"};
  switch (k) {
    case Kind::accel: h.insert(h.end(), {"x", "y", "z"}); break;
    case Kind::accessibilityLog: h.push_back("token"); break;
    case Kind::callLog:
    case Kind::sociabilityCallLog:
      h.insert(h.end(), {"direction", "duration_s", "type", "contact"});
      break;
    case Kind::gps: h.insert(h.end(), {"lat", "lon", "accuracy"}); break;
    case Kind::heart: h.push_back("bpm"); break;
    case Kind::light: h.push_back("lux"); break;
    case Kind::powerState: h.push_back("event"); break;
    case Kind::sleep: h.insert(h.end(), {"stage", "duration_s"}); break;
    case Kind::sociabilityLog:
    case Kind::textsLog:
      h.insert(h.end(), {"direction", "contact", "length", "type"});
      break;
    case Kind::steps: h.push_back("steps"); break;
    case Kind::tapsLog: h.insert(h.end(), {"package", "orientation"}); break;
  }
  return h;
}

namespace {

bool numeric_payload_ok(Kind k, const std::vector<std::string_view>& f) {
  double d;
  std::int64_t i;
  switch (k) {
    case Kind::accel:
      return try_parse_f64(f[2], d) && try_parse_f64(f[3], d) && try_parse_f64(f[4], d);
    case Kind::callLog:
    case Kind::sociabilityCallLog:
      return try_parse_f64(f[3], d) && d >= 0;
    case Kind::gps: {
      double lat, lon;
      return try_parse_f64(f[2], lat) && try_parse_f64(f[3], lon) && try_parse_f64(f[4], d) &&
             lat >= -90 && lat <= 90 && lon >= -180 && lon <= 180;
    }
    case Kind::heart: return try_parse_f64(f[2], d) && d > 0;
    case Kind::light: return try_parse_f64(f[2], d);
    case Kind::sleep: {
      if (!(f[2] == "deep" || f[2] == "light" || f[2] == "rem" || f[2] == "awake")) return false;
      return try_parse_i64(f[3], i) && i >= 0 && i % 30 == 0;
    }
    case Kind::sociabilityLog:
    case Kind::textsLog:
      return try_parse_i64(f[4], i) && i >= 0;
    case Kind::steps: return try_parse_i64(f[2], i) && i >= 0;
    case Kind::accessibilityLog:
    case Kind::powerState:
    case Kind::tapsLog:
      return true;
  }
  return true;
}

}  // namespace

ParseResult parse_raw_csv(Kind k, std::string_view text) {
  ParseResult out;
  const auto schema = kind_header(k);
  size_t pos = 0;
  bool first = true;
  int ts_col = -1, tz_col = -1;
  size_t ncols = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        (nl == std::string_view::npos) ? text.substr(pos) : text.substr(pos, nl - pos);
    bool has_newline = nl != std::string_view::npos;
    pos = has_newline ? nl + 1 : text.size();
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (first) {
      first = false;
      ncols = fields.size();
      for (size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "timestamp" || fields[i] == "datetime") ts_col = static_cast<int>(i);
        if (fields[i] == "tz_offset") tz_col = static_cast<int>(i);
      }
      if (ts_col < 0) throw Error(Errc::MissingTimestampColumn, kind_name(k));
      continue;
    }
    // Truncated trailing line (no newline, wrong arity) or any arity mismatch.
    if (fields.size() != ncols) {
      ++out.rows_dropped;
      continue;
    }
    RawRecord r;
    if (!try_parse_i64(fields[static_cast<size_t>(ts_col)], r.timestamp) || r.timestamp <= 0) {
      ++out.rows_dropped;
      continue;
    }
    std::int64_t tz = 0;
    if (tz_col >= 0 && !try_parse_i64(fields[static_cast<size_t>(tz_col)], tz)) {
      ++out.rows_dropped;
      continue;
    }
    if (tz < -14 * 60 || tz > 14 * 60) {
      ++out.rows_dropped;
      continue;
    }
    r.tz_offset = static_cast<std::int32_t>(tz);
    // Payload columns in schema order (input assumed in schema order; tools
    // in this repo always write them that way).
    if (fields.size() < schema.size() || !numeric_payload_ok(k, fields)) {
      ++out.rows_dropped;
      continue;
    }
    r.payload.reserve(fields.size() - 2);
    for (size_t i = 2; i < fields.size(); ++i) r.payload.emplace_back(fields[i]);
    out.records.push_back(std::move(r));
  }
  return out;
}

std::string serialize_records(Kind k, const std::vector<RawRecord>& records) {
  std::string out;
  const auto schema = kind_header(k);
  for (size_t i = 0; i < schema.size(); ++i) {
    if (i) out.push_back(',');
    out += schema[i];
  }
  out.push_back('\n');
  for (const auto& r : records) {
    append_i64(out, r.timestamp);
    out.push_back(',');
    append_i64(out, r.tz_offset);
    for (const auto& p : r.payload) {
      out.push_back(',');
      out += p;
    }
    out.push_back('\n');
  }
  return out;
}

std::int64_t patch_timestamp(std::int64_t ts, std::int64_t threshold) {
  return ts < threshold ? ts * 1000 : ts;
}

std::string patch_csv_text(std::string_view text, std::int64_t threshold) {
  std::string out;
  out.reserve(text.size() + text.size() / 8);
  size_t pos = 0;
  bool first = true;
  int ts_col = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        (nl == std::string_view::npos) ? text.substr(pos) : text.substr(pos, nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
    if (first) {
      first = false;
      auto fields = split_fields(line);
      ts_col = -1;
      for (size_t i = 0; i < fields.size(); ++i)
        if (fields[i] == "timestamp" || fields[i] == "datetime") ts_col = static_cast<int>(i);
      out += line;
      out.push_back('\n');
      continue;
    }
    if (line.empty()) continue;
    if (ts_col < 0) {
      out += line;
      out.push_back('\n');
      continue;
    }
    auto fields = split_fields(line);
    if (static_cast<size_t>(ts_col) >= fields.size()) {
      out += line;
      out.push_back('\n');
      continue;
    }
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) out.push_back(',');
      std::int64_t ts;
      if (i == static_cast<size_t>(ts_col) && try_parse_i64(fields[i], ts))
        append_i64(out, patch_timestamp(ts, threshold));
      else
        out += fields[i];
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace pheno
