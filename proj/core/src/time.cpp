#include "pheno/time.hpp"

#include <cstdio>

#include "pheno/error.hpp"

namespace pheno {

std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);            // [0, 399]
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;  // [0, 365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;            // [0, 146096]
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDay civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);                   // [0, 146096]
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;     // [0, 399]
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);                   // [0, 365]
  const unsigned mp = (5 * doy + 2) / 153;                                        // [0, 11]
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;                                // [1, 31]
  const unsigned m = mp + (mp < 10 ? 3 : -9);                                     // [1, 12]
  return CivilDay{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

std::string format_day(const CivilDay& c) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", c.year, c.month, c.day);
  return buf;
}

std::string format_day(std::int64_t serial) { return format_day(civil_from_days(serial)); }

CivilDay parse_day(const std::string& s) {
  auto bad = [&] { throw Error(Errc::BadArgument, "expected YYYY-MM-DD, got '" + s + "'"); };
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') bad();
  for (int i : {0, 1, 2, 3, 5, 6, 8, 9})
    if (s[i] < '0' || s[i] > '9') bad();
  CivilDay c;
  c.year = (s[0] - '0') * 1000 + (s[1] - '0') * 100 + (s[2] - '0') * 10 + (s[3] - '0');
  c.month = (s[5] - '0') * 10 + (s[6] - '0');
  c.day = (s[8] - '0') * 10 + (s[9] - '0');
  if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > 31) bad();
  // Round-trip to reject 2021-02-31 style input.
  if (civil_from_days(day_serial(c)) != c) bad();
  return c;
}

std::string format_local_datetime(std::int64_t lms) {
  CivilDay c = civil_from_days(local_day_serial(lms));
  std::int64_t rem = ms_of_day(lms) / 1000;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:%02d", c.year, c.month, c.day,
                static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                static_cast<int>(rem % 60));
  return buf;
}

}  // namespace pheno
