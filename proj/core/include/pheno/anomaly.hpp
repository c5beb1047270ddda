#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pheno/config.hpp"

namespace pheno {

// One scored day: the joint score plus one score per dashboard feature
// (aligned with anomaly_feature_selection()), NaN where unavailable.
struct DayScores {
  double multivariate = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> features;
};

// participant -> day serial -> scores
using ScoreTable = std::map<std::string, std::map<std::int64_t, DayScores>>;

// Per-participant inputs: day serial -> the 12 selected feature values
// (NaN = missing that day).
using FeatureMatrix = std::map<std::int64_t, std::vector<double>>;

// Scores one day against the participant's earlier history. For each
// feature a forecast model (cfg.anomaly_model: "ar" or "gp") is fit on the
// days strictly before `day`; the day's residual is ranked against the fit
// residuals (two-sided empirical tail). The joint score standardizes the
// per-day residuals and ranks the day's Mahalanobis distance on the chi^2
// scale, using only jointly-complete history days. Features without enough
// history score NaN.
DayScores score_day(const FeatureMatrix& days, std::int64_t day, const StudyConfig& cfg);

// Scores every day in the matrix (or just `only_day`) and replaces those
// rows in the table; re-running on unchanged inputs is a no-op.
void score_participant(ScoreTable& table, const std::string& participant,
                       const FeatureMatrix& days, const StudyConfig& cfg,
                       std::optional<std::int64_t> only_day = std::nullopt);

// Score-table CSV: one row per (participant, day), scores rendered with
// four decimals, missing as "nan".
std::string render_score_table(const ScoreTable& table);
ScoreTable parse_score_table(const std::string& csv_text);

}  // namespace pheno
