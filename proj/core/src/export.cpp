#include "pheno/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <vector>

#include "pheno/csv.hpp"
#include "pheno/error.hpp"
#include "pheno/gzio.hpp"
#include "pheno/manifest.hpp"
#include "pheno/numeric.hpp"
#include "pheno/time.hpp"

namespace pheno {

namespace {

struct Sample {
  std::int64_t lms;
  double value;
};

std::vector<Sample> raw_samples(const StudyLayout& layout, const std::string& pid,
                                const std::string& kind) {
  fs::path file = layout.stage_study(4) / pid / (kind + ".csv");
  std::vector<Sample> out;
  if (!fs::exists(file)) return out;
  CsvTable table = parse_csv(read_file(file));
  size_t n = table.rows.size();
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const auto& row = table.rows[i];
    std::int64_t ts, tz;
    if (!try_parse_i64(row[0], ts) || !try_parse_i64(row[1], tz)) continue;
    std::int64_t lms = local_ms(ts, static_cast<int>(tz));
    double v;
    if (kind == "accel") {
      double x, y, z;
      if (!try_parse_f64(row[2], x) || !try_parse_f64(row[3], y) || !try_parse_f64(row[4], z))
        continue;
      v = std::sqrt(x * x + y * y + z * z);
    } else {
      if (!try_parse_f64(row[2], v)) continue;
    }
    out.push_back({lms, v});
  }
  return out;
}

std::vector<Sample> daily_samples(const StudyLayout& layout, const std::string& pid,
                                  const std::string& feature) {
  size_t col = default_manifest().index_of(feature);  // throws UnknownFeature
  std::vector<Sample> out;
  fs::path file = layout.daily_gz(pid);
  if (!fs::exists(file)) return out;
  CsvTable table = parse_csv(gzip_decompress(read_file_bytes(file)));
  for (const auto& row : table.rows) {
    if (row.size() <= col + 1) continue;
    double v;
    if (!try_parse_f64(row[col + 1], v) || std::isnan(v)) continue;
    out.push_back({day_serial(parse_day(row[0])) * kMsPerDay, v});
  }
  return out;
}

std::string bucket_label(std::int64_t bucket, std::int64_t width_ms) {
  std::int64_t start = bucket * width_ms;
  std::int64_t day = floor_div(start, kMsPerDay);
  std::string label = format_day(civil_from_days(day));
  if (width_ms < kMsPerDay) {
    char buf[8];
    std::snprintf(buf, sizeof buf, " %02d:00",
                  static_cast<int>(floor_mod(start, kMsPerDay) / kMsPerHour));
    label += buf;
  }
  return label;
}

double reduce(const std::string& statistic, std::vector<double>& v) {
  if (statistic == "max") return vec_max(v);
  if (statistic == "min") return vec_min(v);
  if (statistic == "mean") return vec_mean(v);
  if (statistic == "median") return vec_median(v);
  if (statistic == "std") return vec_std(v);
  if (statistic == "count") return static_cast<double>(v.size());
  throw Error(Errc::BadArgument, "statistic must be max|min|mean|median|std|count");
}

}  // namespace

std::string export_series(const StudyLayout& layout, const StudyConfig&,
                          const std::string& participant, const std::string& feature,
                          const std::string& interval, const std::string& statistic) {
  std::int64_t width_ms;
  if (interval == "1h")
    width_ms = kMsPerHour;
  else if (interval == "1d")
    width_ms = kMsPerDay;
  else if (interval == "1w")
    width_ms = 7 * kMsPerDay;
  else
    throw Error(Errc::BadArgument, "interval must be 1h|1d|1w");

  std::vector<Sample> samples;
  if (feature == "heart" || feature == "light" || feature == "steps" || feature == "accel")
    samples = raw_samples(layout, participant, feature);
  else
    samples = daily_samples(layout, participant, feature);

  std::map<std::int64_t, std::vector<double>> buckets;
  for (const auto& s : samples) buckets[floor_div(s.lms, width_ms)].push_back(s.value);

  std::string csv = "bucket," + statistic + "\n";
  // validate the statistic even when there is no data
  if (buckets.empty()) {
    std::vector<double> probe{0.0};
    (void)reduce(statistic, probe);
  }
  for (auto& [bucket, values] : buckets) {
    csv += bucket_label(bucket, width_ms);
    csv += ',';
    append_cell(csv, reduce(statistic, values));
    csv += '\n';
  }
  return csv;
}

}  // namespace pheno
