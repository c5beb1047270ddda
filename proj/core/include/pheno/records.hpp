#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pheno/csv.hpp"

namespace pheno {

// The 13 raw sensor streams. Enum order is the canonical family order used
// by the manifest and all per-kind loops.
enum class Kind {
  accel,
  accessibilityLog,
  callLog,
  gps,
  heart,
  light,
  powerState,
  sleep,
  sociabilityCallLog,
  sociabilityLog,
  steps,
  tapsLog,
  textsLog,
};

constexpr int kKindCount = 13;
const std::array<Kind, kKindCount>& all_kinds();

const char* kind_name(Kind k);
Kind kind_from_name(const std::string& name);  // throws UnknownKind

// CSV header per kind. Column 0 is always `timestamp` (epoch ms) and column
// 1 `tz_offset` (minutes east of UTC); the rest is the kind payload:
//   accel:              x,y,z                      (m/s²)
//   accessibilityLog:   token                      (alpha|num|punct|DELETE|other)
//   callLog:            direction,duration_s,type,contact
//   gps:                lat,lon,accuracy
//   heart:              bpm
//   light:              lux
//   powerState:         event                      (screen_on|screen_off|power_down|...)
//   sleep:              stage,duration_s           (deep|light|rem|awake; 30 s multiples)
//   sociabilityCallLog: direction,duration_s,type,contact
//   sociabilityLog:     direction,contact,length,type
//   steps:              steps                      (count in the minute)
//   tapsLog:            package,orientation        (+app_group after value fixing)
//   textsLog:           direction,contact,length,type
std::vector<std::string> kind_header(Kind k);

struct RawRecord {
  std::int64_t timestamp = 0;  // epoch ms
  std::int32_t tz_offset = 0;  // minutes
  std::vector<std::string> payload;
};

struct ParseResult {
  std::vector<RawRecord> records;
  std::int64_t rows_dropped = 0;
};

// Typed parse with validation; malformed rows are dropped and counted, never
// fatal. Throws only for a missing timestamp column or unknown kind.
ParseResult parse_raw_csv(Kind k, std::string_view text);
std::string serialize_records(Kind k, const std::vector<RawRecord>& records);

// Seconds→milliseconds repair: timestamps below the threshold are scaled by
// 1000. Idempotent because any already-patched value exceeds the threshold.
std::int64_t patch_timestamp(std::int64_t ts, std::int64_t threshold);

// Text-level variant used by the pipeline stage: rewrites only the timestamp
// field, preserving all other bytes of each row.
std::string patch_csv_text(std::string_view text, std::int64_t threshold);

}  // namespace pheno
