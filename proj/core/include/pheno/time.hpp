#pragma once

#include <cstdint>
#include <string>

namespace pheno {

// Calendar day. All pipeline day arithmetic happens on serial day numbers
// (days since 1970-01-01) so DST and leap handling reduce to integer math.
struct CivilDay {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31

  friend bool operator==(const CivilDay&, const CivilDay&) = default;
};

// Proleptic-Gregorian conversions (Howard Hinnant's algorithms).
std::int64_t days_from_civil(int y, int m, int d);
CivilDay civil_from_days(std::int64_t z);

inline std::int64_t day_serial(const CivilDay& c) { return days_from_civil(c.year, c.month, c.day); }

// "YYYY-MM-DD". Parsing is strict: exactly ten chars, zero padded.
std::string format_day(const CivilDay& c);
std::string format_day(std::int64_t serial);
CivilDay parse_day(const std::string& s);

// Shift a UTC epoch-ms timestamp into the wall clock it was recorded under.
inline std::int64_t local_ms(std::int64_t timestamp_ms, std::int32_t tz_offset_min) {
  return timestamp_ms + static_cast<std::int64_t>(tz_offset_min) * 60'000;
}

constexpr std::int64_t kMsPerDay = 86'400'000;
constexpr std::int64_t kMsPerHour = 3'600'000;
constexpr std::int64_t kMsPerMin = 60'000;

// Floor division/modulo so negative local times land on the correct day.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

inline std::int64_t local_day_serial(std::int64_t lms) { return floor_div(lms, kMsPerDay); }
inline std::int64_t ms_of_day(std::int64_t lms) { return floor_mod(lms, kMsPerDay); }
inline int hour_of_day(std::int64_t lms) { return static_cast<int>(ms_of_day(lms) / kMsPerHour); }
inline int minute_of_day(std::int64_t lms) { return static_cast<int>(ms_of_day(lms) / kMsPerMin); }

// Epoch-ms of local midnight for a serial day (in that same local frame).
inline std::int64_t day_start_ms(std::int64_t serial) { return serial * kMsPerDay; }

// "YYYY-MM-DD HH:MM:SS" for report rendering. ms is a local-frame epoch time.
std::string format_local_datetime(std::int64_t lms);

}  // namespace pheno
