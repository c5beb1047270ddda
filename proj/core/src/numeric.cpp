#include "pheno/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pheno {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

double vec_sum(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s;
}

double vec_mean(const std::vector<double>& v) {
  if (v.empty()) return kNan;
  return vec_sum(v) / static_cast<double>(v.size());
}

double vec_std(const std::vector<double>& v) {
  if (v.empty()) return kNan;
  double m = vec_mean(v);
  double acc = 0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

double vec_std_sample(const std::vector<double>& v) {
  if (v.size() < 2) return kNan;
  double m = vec_mean(v);
  double acc = 0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

double vec_min(const std::vector<double>& v) {
  if (v.empty()) return kNan;
  return *std::min_element(v.begin(), v.end());
}

double vec_max(const std::vector<double>& v) {
  if (v.empty()) return kNan;
  return *std::max_element(v.begin(), v.end());
}

double vec_quantile(std::vector<double> v, double q) {
  if (v.empty()) return kNan;
  std::sort(v.begin(), v.end());
  if (v.size() == 1) return v[0];
  double pos = q * static_cast<double>(v.size() - 1);
  size_t lo = static_cast<size_t>(std::floor(pos));
  size_t hi = static_cast<size_t>(std::ceil(pos));
  double frac = pos - static_cast<double>(lo);
  return v[lo] + (v[hi] - v[lo]) * frac;
}

double vec_median(std::vector<double> v) { return vec_quantile(std::move(v), 0.5); }

double lgamma_fn(double x) { return std::lgamma(x); }

namespace {

// Continued fraction for I_x(a,b), modified Lentz. Converges for
// x < (a+1)/(a+b+2); the symmetry below routes to that regime.
double incbeta_cf(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  double qab = a + b, qap = a + 1, qam = a - 1;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 500; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double incbeta(double a, double b, double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  double lbeta = lgamma_fn(a) + lgamma_fn(b) - lgamma_fn(a + b);
  double front = std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta);
  if (x < (a + 1) / (a + b + 2))
    return front * incbeta_cf(a, b, x) / a;
  return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - lbeta) * incbeta_cf(b, a, 1 - x) / b;
}

double gammainc_lower(double a, double x) {
  if (x <= 0) return 0;
  if (a <= 0) return 1;
  double lg = lgamma_fn(a);
  if (x < a + 1) {
    // series
    double sum = 1.0 / a, term = sum, ap = a;
    for (int n = 0; n < 1000; ++n) {
      ap += 1;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  // continued fraction for upper gamma Q(a,x)
  constexpr double tiny = 1e-300;
  double b = x + 1 - a, c = 1 / tiny, d = 1 / b, h = d;
  for (int i = 1; i <= 1000; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  double q = std::exp(-x + a * std::log(x) - lg) * h;
  return 1.0 - q;
}

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double t_sf_two_sided(double t, double nu) {
  double x = nu / (nu + t * t);
  return incbeta(nu / 2.0, 0.5, x);
}

double chi2_cdf(double x, double k) { return gammainc_lower(k / 2.0, x / 2.0); }

}  // namespace pheno
