#include <cmath>
#include <random>

#include <doctest.h>

#include "pheno/anomaly.hpp"
#include "pheno/error.hpp"
#include "pheno/forecast.hpp"
#include "pheno/manifest.hpp"

using namespace pheno;

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::vector<double> weekly_series(int days, double base, double weekend_dip,
                                  std::mt19937_64& rng, double noise_sd) {
  std::normal_distribution<double> noise(0, noise_sd);
  std::vector<double> y(days);
  for (int d = 0; d < days; ++d) {
    double v = base + noise(rng);
    if (d % 7 >= 5) v -= weekend_dip;
    y[static_cast<size_t>(d)] = v;
  }
  return y;
}
}  // namespace

TEST_CASE("constant series predicts the constant") {
  std::vector<double> y(40, 5.0);
  auto m = fit_seasonal_ar(y, 3, 21);
  CHECK(m->predict(y, y.size()) == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("pure weekly pattern is captured almost exactly") {
  std::vector<double> pattern{10, 12, 11, 9, 14, 20, 22};
  std::vector<double> y;
  for (int w = 0; w < 10; ++w) y.insert(y.end(), pattern.begin(), pattern.end());
  auto m = fit_seasonal_ar(y, 3, 21);
  double pred = m->predict(y, y.size());
  CHECK(std::fabs(pred - pattern[y.size() % 7]) < 1e-6);
}

TEST_CASE("too little history raises InsufficientHistory") {
  std::vector<double> y(10, 3.0);
  CHECK_THROWS_AS(fit_seasonal_ar(y, 3, 21), Error);
  try {
    fit_seasonal_ar(y, 3, 21);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InsufficientHistory);
  }
  CHECK_THROWS_AS(fit_periodic_gp(y, GpParams{}, 21), Error);
}

TEST_CASE("prediction with a missing lag is NaN") {
  std::mt19937_64 rng(3);
  auto y = weekly_series(60, 100, 0, rng, 5);
  auto m = fit_seasonal_ar(y, 3, 21);
  auto broken = y;
  broken.back() = kNan;  // lag-1 of the next day gone
  CHECK(std::isnan(m->predict(broken, broken.size())));
}

TEST_CASE("gp fits a constant and smooth weekly data") {
  std::vector<double> y(30, 7.0);
  auto m = fit_periodic_gp(y, GpParams{}, 21);
  CHECK(m->predict(y, y.size()) == doctest::Approx(7.0).epsilon(0.05));

  std::mt19937_64 rng(4);
  auto wy = weekly_series(70, 50, 10, rng, 1.0);
  auto gm = fit_periodic_gp(wy, GpParams{}, 21);
  double pred = gm->predict(wy, wy.size());
  // day 70 is a weekday: prediction should sit near the weekday level
  CHECK(std::fabs(pred - 50) < 6.0);
}

TEST_CASE("empirical score pins the textbook anchor points") {
  std::vector<double> res;
  for (int i = 1; i <= 100; ++i) res.push_back(static_cast<double>(i));
  // median residual: F = 0.5 -> score 0
  CHECK(empirical_score(res, 50.5) == doctest::Approx(0.0).epsilon(1e-9));
  // beyond every residual: score 1
  CHECK(empirical_score(res, 1000) == doctest::Approx(1.0));
  CHECK(empirical_score(res, -1000) == doctest::Approx(1.0));
  // 90th percentile: F = 0.9 (score 0.8); r=90.5 sits between ranks 90 and 91
  CHECK(empirical_score(res, 90.5) == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(std::isnan(empirical_score(res, kNan)));
  CHECK(std::isnan(empirical_score({}, 1.0)));
}

TEST_CASE("empirical score is monotone in distance from the residual median") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0, 1);
  std::vector<double> res(200);
  for (auto& r : res) r = noise(rng);
  std::vector<double> sorted = res;
  std::sort(sorted.begin(), sorted.end());
  double med = (sorted[99] + sorted[100]) / 2;
  double prev = -1;
  for (double step : {0.0, 0.3, 0.7, 1.2, 2.0, 3.5}) {
    double s = empirical_score(res, med + step);
    CHECK(s >= prev - 1e-12);
    prev = s;
  }
}

TEST_CASE("scores always land in [0,1] or NaN") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> noise(0, 3);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> res(1 + static_cast<size_t>(rng() % 60));
    for (auto& r : res) r = noise(rng);
    double s = empirical_score(res, noise(rng) * 4);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("multivariate score: zero vector scores zero, big vector scores high") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> noise(0, 1);
  std::vector<std::vector<double>> rows(60, std::vector<double>(3));
  for (auto& r : rows)
    for (auto& v : r) v = noise(rng);
  std::vector<int> present{0, 1, 2};
  // a day sitting exactly on the historical mean has zero Mahalanobis distance
  std::vector<double> mean(3, 0.0);
  for (const auto& r : rows)
    for (int j = 0; j < 3; ++j) mean[static_cast<size_t>(j)] += r[static_cast<size_t>(j)];
  for (auto& v : mean) v /= static_cast<double>(rows.size());
  double zero = multivariate_score(rows, mean, present, 1e-3, 21);
  CHECK(zero == doctest::Approx(0.0).epsilon(1e-9));
  double big = multivariate_score(rows, {6, 6, 6}, present, 1e-3, 21);
  CHECK(big > 0.99);
  CHECK(std::isnan(multivariate_score(rows, {1, 1, 1}, {0}, 1e-3, 21)));  // <2 present
  std::vector<std::vector<double>> tiny(rows.begin(), rows.begin() + 5);
  CHECK(std::isnan(multivariate_score(tiny, {1, 1, 1}, present, 1e-3, 21)));
}

TEST_CASE("five-sigma final-day shift is flagged, quiet days are not") {
  StudyConfig cfg;
  int detected = 0;
  std::vector<double> quiet_scores;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    auto y = weekly_series(90, 200, 30, rng, 8);
    FeatureMatrix days;
    for (size_t d = 0; d < y.size(); ++d)
      days[static_cast<std::int64_t>(d)] = std::vector<double>(12, y[d]);

    // residual scale of an AR fit on the pre-shift series
    auto model = fit_seasonal_ar(std::vector<double>(y.begin(), y.end() - 1), cfg.ar_order,
                                 cfg.min_history_days);
    double sd = 0;
    for (double r : model->residuals()) sd += r * r;
    sd = std::sqrt(sd / static_cast<double>(model->residuals().size()));

    auto shifted = days;
    auto& last = shifted[89];
    for (auto& v : last) v += 5 * sd;
    auto scores = score_day(shifted, 89, cfg);
    if (scores.features[2] >= 0.9) ++detected;

    auto normal = score_day(days, 60, cfg);
    if (!std::isnan(normal.features[2])) quiet_scores.push_back(normal.features[2]);
  }
  CHECK(detected >= 18);  // >= 90% of seeds
  std::sort(quiet_scores.begin(), quiet_scores.end());
  REQUIRE(!quiet_scores.empty());
  CHECK(quiet_scores[quiet_scores.size() / 2] <= 0.6);
}

TEST_CASE("weekend dip is unsurprising after four weeks of history") {
  StudyConfig cfg;
  for (std::uint64_t seed = 100; seed < 105; ++seed) {
    std::mt19937_64 rng(seed);
    auto y = weekly_series(35, 300, 80, rng, 5);  // strong dip, 5 weeks
    FeatureMatrix days;
    for (size_t d = 0; d < y.size(); ++d)
      days[static_cast<std::int64_t>(d)] = std::vector<double>(12, y[d]);
    // day 33 (index) is a weekend day: 33 % 7 == 5
    auto scores = score_day(days, 33, cfg);
    REQUIRE(!std::isnan(scores.features[0]));
    CHECK(scores.features[0] < 0.9);
  }
}

TEST_CASE("insufficient history gives NaN scores") {
  StudyConfig cfg;
  FeatureMatrix days;
  for (int d = 0; d < 10; ++d) days[d] = std::vector<double>(12, 5.0);
  auto scores = score_day(days, 9, cfg);
  CHECK(std::isnan(scores.multivariate));
  for (double f : scores.features) CHECK(std::isnan(f));
}

TEST_CASE("score_participant is idempotent and rerenders identically") {
  StudyConfig cfg;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> noise(0, 4);
  FeatureMatrix days;
  for (int d = 0; d < 50; ++d) {
    std::vector<double> v(12);
    for (auto& x : v) x = 100 + noise(rng);
    if (d == 30) v[4] = kNan;  // hole
    days[d] = v;
  }
  ScoreTable t1, t2;
  score_participant(t1, "P1", days, cfg);
  score_participant(t2, "P1", days, cfg);
  score_participant(t2, "P1", days, cfg);  // rerun
  auto csv1 = render_score_table(t1);
  auto csv2 = render_score_table(t2);
  CHECK(csv1 == csv2);

  auto parsed = parse_score_table(csv1);
  CHECK(render_score_table(parsed) == csv1);
}

TEST_CASE("score table renders nan and four decimals") {
  ScoreTable t;
  DayScores d;
  d.multivariate = 1.0;
  d.features = std::vector<double>(12, kNan);
  d.features[0] = 0.82184;
  t["PID1234567"][18345] = d;
  auto csv = render_score_table(t);
  CHECK(csv.find("1.0000") != std::string::npos);
  CHECK(csv.find("0.8218") != std::string::npos);
  CHECK(csv.find("nan") != std::string::npos);
  CHECK(csv.find("PID1234567") != std::string::npos);
  // header names the selected features
  CHECK(csv.find("multi var") != std::string::npos);
  CHECK(csv.find("RoG") != std::string::npos);
}

TEST_CASE("the twelve selected features resolve to manifest columns") {
  const auto& man = default_manifest();
  for (const auto& [label, column] : anomaly_feature_selection()) {
    CHECK(man.has(column));
    CHECK(!label.empty());
  }
  CHECK(anomaly_feature_selection().size() == 12);
}
