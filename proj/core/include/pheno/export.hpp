#pragma once

#include <string>

#include "pheno/config.hpp"
#include "pheno/layout.hpp"

namespace pheno {

// Resamples one participant series into fixed buckets for plotting.
//
// `feature` is either a raw signal ("heart", "light", "steps", "accel" —
// the accel series is the vector magnitude) read from the stage-4 tables,
// or any column of the daily feature table (e.g. "steps.daily_n_steps"),
// one sample per day. `interval` is "1h", "1d" or "1w" (weeks start on the
// Monday-aligned serial-day multiple of 7); `statistic` is one of
// max / min / mean / median / std / count. std is the population form.
//
// Returns CSV "bucket,<statistic>" with one row per non-empty bucket in
// ascending time order; an empty series yields just the header. Throws
// UnknownFeature for an unrecognized feature and BadArgument for a bad
// interval or statistic.
std::string export_series(const StudyLayout& layout, const StudyConfig& cfg,
                          const std::string& participant, const std::string& feature,
                          const std::string& interval, const std::string& statistic);

}  // namespace pheno
