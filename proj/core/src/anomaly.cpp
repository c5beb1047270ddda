#include "pheno/anomaly.hpp"

#include <cmath>
#include <cstdio>

#include "pheno/csv.hpp"
#include "pheno/error.hpp"
#include "pheno/forecast.hpp"
#include "pheno/manifest.hpp"
#include "pheno/numeric.hpp"
#include "pheno/time.hpp"

namespace pheno {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::unique_ptr<ForecastModel> fit_model(const std::vector<double>& hist,
                                         const StudyConfig& cfg) {
  if (cfg.anomaly_model == "gp") {
    GpParams gp;
    gp.length_scale = cfg.gp_length_scale;
    gp.period_days = cfg.gp_period_days;
    gp.noise_frac = cfg.gp_noise_frac;
    return fit_periodic_gp(hist, gp, cfg.min_history_days);
  }
  return fit_seasonal_ar(hist, cfg.ar_order, cfg.min_history_days);
}

// Residual at every index < upto: actual minus model prediction, NaN where
// either side is unavailable.
std::vector<double> residual_series(const ForecastModel& m, const std::vector<double>& y,
                                    size_t upto) {
  std::vector<double> res(upto, kNan);
  for (size_t t = 0; t < upto; ++t) {
    if (std::isnan(y[t])) continue;
    double pred = m.predict(y, t);
    if (std::isnan(pred)) continue;
    res[t] = y[t] - pred;
  }
  return res;
}

}  // namespace

DayScores score_day(const FeatureMatrix& days, std::int64_t day, const StudyConfig& cfg) {
  const size_t nf = anomaly_feature_selection().size();
  DayScores out;
  out.features.assign(nf, kNan);
  if (days.empty()) return out;

  const std::int64_t t0 = days.begin()->first;
  if (day < t0) return out;
  const size_t len = static_cast<size_t>(day - t0) + 1;

  // Column-major copies on the contiguous day axis.
  std::vector<std::vector<double>> y(nf, std::vector<double>(len, kNan));
  for (const auto& [d, vals] : days) {
    if (d < t0 || d > day) continue;
    for (size_t f = 0; f < nf && f < vals.size(); ++f)
      y[f][static_cast<size_t>(d - t0)] = vals[f];
  }

  const size_t T = len - 1;
  // standardized residuals per feature: history rows and today's value
  std::vector<std::vector<double>> zhist(nf);
  std::vector<double> ztoday(nf, kNan);
  for (size_t f = 0; f < nf; ++f) {
    std::vector<double> hist(y[f].begin(), y[f].begin() + static_cast<std::int64_t>(T));
    std::unique_ptr<ForecastModel> model;
    try {
      model = fit_model(hist, cfg);
    } catch (const Error&) {
      continue;  // not enough history for this feature
    }
    double pred = model->predict(y[f], T);
    double res_today = (std::isnan(y[f][T]) || std::isnan(pred)) ? kNan : y[f][T] - pred;
    out.features[f] = empirical_score(model->residuals(), res_today);

    double sd = vec_std(model->residuals());
    if (!(sd > 0.0)) continue;
    zhist[f] = residual_series(*model, y[f], T);
    for (double& v : zhist[f]) v /= sd;
    if (!std::isnan(res_today)) ztoday[f] = res_today / sd;
  }

  // Joint score over features with a standardized residual today, using
  // history days where all of those features have one.
  std::vector<int> present;
  for (size_t f = 0; f < nf; ++f)
    if (!std::isnan(ztoday[f])) present.push_back(static_cast<int>(f));
  if (present.size() >= 2) {
    std::vector<std::vector<double>> rows;
    for (size_t t = 0; t < T; ++t) {
      std::vector<double> row(nf, kNan);
      bool complete = true;
      for (int f : present) {
        size_t fi = static_cast<size_t>(f);
        if (zhist[fi].empty() || std::isnan(zhist[fi][t])) {
          complete = false;
          break;
        }
        row[fi] = zhist[fi][t];
      }
      if (complete) rows.push_back(std::move(row));
    }
    out.multivariate = multivariate_score(rows, ztoday, present, cfg.mahalanobis_ridge,
                                          cfg.min_history_days);
  }
  return out;
}

void score_participant(ScoreTable& table, const std::string& participant,
                       const FeatureMatrix& days, const StudyConfig& cfg,
                       std::optional<std::int64_t> only_day) {
  auto& rows = table[participant];
  if (only_day) {
    rows[*only_day] = score_day(days, *only_day, cfg);
    return;
  }
  for (const auto& [d, vals] : days) {
    (void)vals;
    rows[d] = score_day(days, d, cfg);
  }
}

std::string render_score_table(const ScoreTable& table) {
  const auto& sel = anomaly_feature_selection();
  std::string out = "Patient ID,Date,multi var";
  for (const auto& [display, column] : sel) {
    (void)column;
    out += ',';
    out += display;
  }
  out += '\n';
  char buf[32];
  auto cell = [&](double v) {
    out += ',';
    if (std::isnan(v)) {
      out += "nan";
    } else {
      std::snprintf(buf, sizeof buf, "%.4f", v);
      out += buf;
    }
  };
  for (const auto& [pid, days] : table) {
    for (const auto& [day, scores] : days) {
      out += pid;
      out += ',';
      out += format_day(civil_from_days(day));
      cell(scores.multivariate);
      for (size_t f = 0; f < sel.size(); ++f)
        cell(f < scores.features.size() ? scores.features[f] : kNan);
      out += '\n';
    }
  }
  return out;
}

ScoreTable parse_score_table(const std::string& csv_text) {
  const size_t nf = anomaly_feature_selection().size();
  ScoreTable table;
  CsvTable csv = parse_csv(csv_text);
  if (csv.header.size() != nf + 3)
    throw Error(Errc::BadArgument, "score table has " + std::to_string(csv.header.size()) +
                                       " columns, expected " + std::to_string(nf + 3));
  for (const auto& row : csv.rows) {
    if (row.size() != nf + 3) continue;
    DayScores s;
    s.multivariate = parse_f64(row[2]);
    s.features.reserve(nf);
    for (size_t f = 0; f < nf; ++f) s.features.push_back(parse_f64(row[3 + f]));
    table[row[0]][day_serial(parse_day(row[1]))] = std::move(s);
  }
  return table;
}

}  // namespace pheno
