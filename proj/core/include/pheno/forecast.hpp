#pragma once

#include <memory>
#include <vector>

#include "pheno/config.hpp"

namespace pheno {

// Day-indexed series on a contiguous calendar: y[i] is the value i days
// after the series origin, NaN where the day is missing.
//
// Models are fit on y[0..n) and asked to predict an index t (typically n).
// A prediction is NaN when its required inputs are missing.
class ForecastModel {
 public:
  virtual ~ForecastModel() = default;
  virtual double predict(const std::vector<double>& y, size_t t) const = 0;
  const std::vector<double>& residuals() const { return residuals_; }

 protected:
  std::vector<double> residuals_;
};

// Least-squares autoregression on lags {1..p} ∪ {7,14} with intercept.
// Design rows with any missing lag are dropped. Requires min_history
// non-missing days and enough complete rows to determine the coefficients.
std::unique_ptr<ForecastModel> fit_seasonal_ar(const std::vector<double>& y, int p,
                                               int min_history);

struct GpParams {
  double length_scale = 10.0;
  double period_days = 7.0;
  double noise_frac = 0.1;  // observation noise = frac * sample std
};
// GP regression, kernel = SE(length_scale) + periodic(period, unit inner
// scale) + noise. Residuals are the training-point prediction errors.
std::unique_ptr<ForecastModel> fit_periodic_gp(const std::vector<double>& y, const GpParams& gp,
                                               int min_history);

// Two-sided empirical-tail score: F = midpoint empirical CDF of the
// residuals at r, score = 1 - 2*min(F, 1-F). NaN r gives NaN.
double empirical_score(const std::vector<double>& residuals, double r);

// Mahalanobis-based joint score over a day's standardized residual vector.
// rows = training residual matrix (joint-complete days × features, already
// standardized); present = indices of features observed today. Returns NaN
// when fewer than 2 features are present or history is too short.
double multivariate_score(const std::vector<std::vector<double>>& rows,
                          const std::vector<double>& z, const std::vector<int>& present,
                          double ridge, int min_history);

}  // namespace pheno
