#pragma once

#include <map>
#include <string>
#include <vector>

#include "pheno/time.hpp"

namespace pheno {

// Per-participant daily feature values keyed by day serial; NaN = missing.
using DailySeries = std::map<std::int64_t, double>;
using CohortSeries = std::map<std::string, DailySeries>;  // participant -> series

struct WindowSpec {
  int pre_start_day = -45;  // relative to the event day, inclusive
  int pre_end_day = -3;
  int post_start_day = 3;
  int post_end_day = 45;
  double min_completeness = 0.5;
};

struct ComparisonRow {
  std::string feature;
  double mean_pre;      // mean over eligible participants of their window means
  double mean_post;
  double t_p;
  double wilcoxon_p;
  int n;                // eligible participants
};

// Pre/post comparison around a per-participant event day. A participant is
// eligible for a feature when both windows have at least min_completeness of
// their days non-missing; window means are over non-missing days only.
// Degenerate paired tests surface as p = 1 when the mean difference is zero
// and p = 0 otherwise. Throws NoEligibleParticipants when no feature has any
// eligible participant.
std::vector<ComparisonRow> window_compare(
    const std::map<std::string, CohortSeries>& by_feature,
    const std::map<std::string, std::int64_t>& event_day,
    const std::vector<std::string>& features, const WindowSpec& spec);

// Table rendering: Feature, pre/post means, both p-values, n.
std::string comparison_csv(const std::vector<ComparisonRow>& rows);

}  // namespace pheno
