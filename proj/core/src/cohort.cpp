#include "pheno/cohort.hpp"

#include <cmath>

#include "pheno/csv.hpp"
#include "pheno/error.hpp"
#include "pheno/numeric.hpp"
#include "pheno/stats.hpp"

namespace pheno {

namespace {

// Mean over non-missing days in [event+lo, event+hi]; NaN when below the
// completeness floor.
double window_mean(const DailySeries& s, std::int64_t event, int lo, int hi,
                   double min_completeness) {
  const int span = hi - lo + 1;
  int present = 0;
  double sum = 0.0;
  for (int d = lo; d <= hi; ++d) {
    auto it = s.find(event + d);
    if (it == s.end() || std::isnan(it->second)) continue;
    ++present;
    sum += it->second;
  }
  if (present == 0) return std::numeric_limits<double>::quiet_NaN();
  if (static_cast<double>(present) / static_cast<double>(span) < min_completeness)
    return std::numeric_limits<double>::quiet_NaN();
  return sum / static_cast<double>(present);
}

}  // namespace

std::vector<ComparisonRow> window_compare(
    const std::map<std::string, CohortSeries>& by_feature,
    const std::map<std::string, std::int64_t>& event_day,
    const std::vector<std::string>& features, const WindowSpec& spec) {
  std::vector<ComparisonRow> out;
  bool any_eligible = false;
  for (const auto& feature : features) {
    std::vector<double> pre, post;
    auto fit = by_feature.find(feature);
    if (fit != by_feature.end()) {
      for (const auto& [pid, series] : fit->second) {
        auto eit = event_day.find(pid);
        if (eit == event_day.end()) continue;
        const double mp = window_mean(series, eit->second, spec.pre_start_day,
                                      spec.pre_end_day, spec.min_completeness);
        const double ma = window_mean(series, eit->second, spec.post_start_day,
                                      spec.post_end_day, spec.min_completeness);
        if (std::isnan(mp) || std::isnan(ma)) continue;
        pre.push_back(mp);
        post.push_back(ma);
      }
    }
    ComparisonRow row;
    row.feature = feature;
    row.n = static_cast<int>(pre.size());
    if (pre.empty()) {
      row.mean_pre = row.mean_post = std::numeric_limits<double>::quiet_NaN();
      row.t_p = row.wilcoxon_p = std::numeric_limits<double>::quiet_NaN();
      out.push_back(row);
      continue;
    }
    any_eligible = true;
    row.mean_pre = vec_mean(pre);
    row.mean_post = vec_mean(post);
    std::vector<double> diffs(pre.size());
    for (std::size_t i = 0; i < pre.size(); ++i) diffs[i] = post[i] - pre[i];
    try {
      row.t_p = paired_t_test(diffs).p;
    } catch (const Error&) {
      row.t_p = (std::fabs(vec_mean(diffs)) == 0.0) ? 1.0 : 0.0;
    }
    try {
      row.wilcoxon_p = wilcoxon_signed_rank(diffs).p;
    } catch (const Error&) {
      row.wilcoxon_p = 1.0;  // all-zero differences: no detectable shift
    }
    out.push_back(row);
  }
  if (!any_eligible)
    throw Error(Errc::NoEligibleParticipants,
                "no participant met the completeness floor in both windows");
  return out;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::string out =
      "feature,mean_pre,mean_post,t_p,wilcoxon_p,n\n";
  for (const auto& r : rows) {
    out += r.feature;
    out += ',';
    append_f64(out, r.mean_pre);
    out += ',';
    append_f64(out, r.mean_post);
    out += ',';
    append_f64(out, r.t_p);
    out += ',';
    append_f64(out, r.wilcoxon_p);
    out += ',';
    append_i64(out, r.n);
    out += '\n';
  }
  return out;
}

}  // namespace pheno
