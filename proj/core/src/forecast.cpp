#include "pheno/forecast.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "pheno/error.hpp"
#include "pheno/numeric.hpp"

namespace pheno {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::vector<int> ar_lags(int p) {
  std::vector<int> lags;
  for (int l = 1; l <= p; ++l) lags.push_back(l);
  for (int l : {7, 14})
    if (std::find(lags.begin(), lags.end(), l) == lags.end()) lags.push_back(l);
  return lags;
}

class SeasonalAr : public ForecastModel {
 public:
  SeasonalAr(std::vector<int> lags, Eigen::VectorXd beta)
      : lags_(std::move(lags)), beta_(std::move(beta)) {}

  double predict(const std::vector<double>& y, size_t t) const override {
    double acc = beta_(0);
    for (size_t i = 0; i < lags_.size(); ++i) {
      std::int64_t idx = static_cast<std::int64_t>(t) - lags_[i];
      if (idx < 0 || static_cast<size_t>(idx) >= y.size()) return kNan;
      double v = y[static_cast<size_t>(idx)];
      if (std::isnan(v)) return kNan;
      acc += beta_(static_cast<Eigen::Index>(i + 1)) * v;
    }
    return acc;
  }

  void set_residuals(std::vector<double> r) { residuals_ = std::move(r); }

 private:
  std::vector<int> lags_;
  Eigen::VectorXd beta_;
};

class PeriodicGp : public ForecastModel {
 public:
  PeriodicGp(std::vector<double> train_t, Eigen::VectorXd alpha, double mean, GpParams params)
      : train_t_(std::move(train_t)), alpha_(std::move(alpha)), mean_(mean), params_(params) {}

  static double kernel(double a, double b, const GpParams& g) {
    double d = a - b;
    double se = std::exp(-d * d / (2.0 * g.length_scale * g.length_scale));
    double s = std::sin(M_PI * d / g.period_days);
    double per = std::exp(-2.0 * s * s);
    return se + per;
  }

  double predict(const std::vector<double>&, size_t t) const override {
    double acc = 0;
    double td = static_cast<double>(t);
    for (size_t i = 0; i < train_t_.size(); ++i)
      acc += kernel(td, train_t_[i], params_) * alpha_(static_cast<Eigen::Index>(i));
    return mean_ + acc;
  }

  void set_residuals(std::vector<double> r) { residuals_ = std::move(r); }

 private:
  std::vector<double> train_t_;
  Eigen::VectorXd alpha_;
  double mean_;
  GpParams params_;
};

}  // namespace

std::unique_ptr<ForecastModel> fit_seasonal_ar(const std::vector<double>& y, int p,
                                               int min_history) {
  int observed = 0;
  for (double v : y)
    if (!std::isnan(v)) ++observed;
  if (observed < min_history)
    throw Error(Errc::InsufficientHistory,
                std::to_string(observed) + " observed days, need " + std::to_string(min_history));

  auto lags = ar_lags(p);
  const size_t k = lags.size();
  std::vector<size_t> rows;
  for (size_t t = 0; t < y.size(); ++t) {
    if (std::isnan(y[t])) continue;
    bool ok = true;
    for (int l : lags) {
      std::int64_t idx = static_cast<std::int64_t>(t) - l;
      if (idx < 0 || std::isnan(y[static_cast<size_t>(idx)])) {
        ok = false;
        break;
      }
    }
    if (ok) rows.push_back(t);
  }
  if (rows.size() < k + 2)
    throw Error(Errc::InsufficientHistory,
                "only " + std::to_string(rows.size()) + " complete design rows");

  Eigen::MatrixXd X(rows.size(), k + 1);
  Eigen::VectorXd b(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    size_t t = rows[r];
    X(static_cast<Eigen::Index>(r), 0) = 1.0;
    for (size_t i = 0; i < k; ++i)
      X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i + 1)) =
          y[t - static_cast<size_t>(lags[i])];
    b(static_cast<Eigen::Index>(r)) = y[t];
  }
  Eigen::VectorXd beta = X.colPivHouseholderQr().solve(b);

  auto model = std::make_unique<SeasonalAr>(lags, beta);
  std::vector<double> resid;
  resid.reserve(rows.size());
  Eigen::VectorXd fitted = X * beta;
  for (size_t r = 0; r < rows.size(); ++r)
    resid.push_back(b(static_cast<Eigen::Index>(r)) - fitted(static_cast<Eigen::Index>(r)));
  model->set_residuals(std::move(resid));
  return model;
}

std::unique_ptr<ForecastModel> fit_periodic_gp(const std::vector<double>& y, const GpParams& gp,
                                               int min_history) {
  std::vector<double> t_obs, y_obs;
  for (size_t i = 0; i < y.size(); ++i) {
    if (!std::isnan(y[i])) {
      t_obs.push_back(static_cast<double>(i));
      y_obs.push_back(y[i]);
    }
  }
  if (static_cast<int>(y_obs.size()) < min_history)
    throw Error(Errc::InsufficientHistory, std::to_string(y_obs.size()) + " observed days");
  for (double v : y_obs)
    if (!std::isfinite(v)) throw Error(Errc::BadArgument, "non-finite value in series");

  const Eigen::Index n = static_cast<Eigen::Index>(y_obs.size());
  double mean = vec_mean(y_obs);
  double sd = vec_std(y_obs);
  double noise = std::max(gp.noise_frac * sd, 1e-8);

  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      K(i, j) = PeriodicGp::kernel(t_obs[static_cast<size_t>(i)], t_obs[static_cast<size_t>(j)],
                                   gp);
  // absolute nugget keeps the factorization alive when the series variance
  // collapses (flat weeks make noise ~ 0 while the kernel stays near-singular)
  K.diagonal().array() += noise * noise + 1e-8;

  Eigen::VectorXd yc(n);
  for (Eigen::Index i = 0; i < n; ++i) yc(i) = y_obs[static_cast<size_t>(i)] - mean;
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success)
    throw Error(Errc::BadArgument, "kernel matrix not positive definite");
  Eigen::VectorXd alpha = llt.solve(yc);

  auto model = std::make_unique<PeriodicGp>(t_obs, alpha, mean, gp);
  std::vector<double> resid;
  resid.reserve(y_obs.size());
  for (size_t i = 0; i < y_obs.size(); ++i) {
    double pred = model->predict({}, static_cast<size_t>(t_obs[i]));
    resid.push_back(y_obs[i] - pred);
  }
  model->set_residuals(std::move(resid));
  return model;
}

double empirical_score(const std::vector<double>& residuals, double r) {
  if (std::isnan(r) || residuals.empty()) return kNan;
  double below = 0, equal = 0;
  for (double v : residuals) {
    if (v < r) ++below;
    else if (v == r) ++equal;
  }
  double f = (below + 0.5 * equal) / static_cast<double>(residuals.size());
  return 1.0 - 2.0 * std::min(f, 1.0 - f);
}

double multivariate_score(const std::vector<std::vector<double>>& rows,
                          const std::vector<double>& z, const std::vector<int>& present,
                          double ridge, int min_history) {
  if (present.size() < 2) return kNan;
  if (static_cast<int>(rows.size()) < min_history) return kNan;
  const int k = static_cast<int>(present.size());

  Eigen::MatrixXd R(static_cast<Eigen::Index>(rows.size()), k);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < k; ++j)
      R(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<size_t>(present[j])];
  Eigen::RowVectorXd mu = R.colwise().mean();
  Eigen::MatrixXd C = (R.rowwise() - mu).transpose() * (R.rowwise() - mu) /
                      static_cast<double>(rows.size());
  double lambda = ridge * C.trace() / static_cast<double>(k);
  C.diagonal().array() += lambda;

  Eigen::VectorXd zv(k);
  for (int j = 0; j < k; ++j)
    zv(j) = z[static_cast<size_t>(present[j])] - mu(j);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(C);
  if (ldlt.info() != Eigen::Success) return kNan;
  double d2 = zv.dot(ldlt.solve(zv));
  if (!(d2 >= 0)) return kNan;
  return chi2_cdf(d2, static_cast<double>(k));
}

}  // namespace pheno
