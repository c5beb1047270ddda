#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace pheno {

// One named dimension of the daily vector. Daily columns are
// `<family>.daily_<stat>`; hourly columns expand to 24 copies named
// `<family>.hourly_<stat>.h00` .. `.h23` (hour-major: all statistics of
// hour h are adjacent, matching "concatenate the vectors from all hours").
struct ManifestEntry {
  std::string family;
  std::string stat;
  bool hourly = false;
  int hour = -1;  // 0..23 for hourly copies
  std::string name;
};

struct FeatureManifest {
  std::vector<ManifestEntry> entries;

  size_t size() const { return entries.size(); }
  // Column index by full name; throws UnknownFeature.
  size_t index_of(const std::string& name) const;
  bool has(const std::string& name) const;
  std::vector<std::string> names() const;
  // Total dimensions contributed by one family.
  size_t family_total(const std::string& family) const;

  void build_index();  // call after mutating entries

 private:
  std::unordered_map<std::string, size_t> index_;
};

// The shipped 729-dimension manifest (105 daily + 26 hourly statistics × 24).
const FeatureManifest& default_manifest();

// Families in manifest order with their expected dimension totals.
std::vector<std::pair<std::string, size_t>> manifest_family_totals();

// manifest.json payload: ordered column list + family totals.
std::string manifest_to_json(const FeatureManifest& m);

// Documents every dimension that was padded into or selected out of the
// prose statistic set to reach the published per-family totals.
std::string manifest_reconciliation_markdown();

// The 12 univariate anomaly-dashboard features: pairs of
// (display label, manifest column name), in dashboard column order.
const std::vector<std::pair<std::string, std::string>>& anomaly_feature_selection();

}  // namespace pheno
