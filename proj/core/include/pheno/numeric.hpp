#pragma once

#include <cstdint>
#include <vector>

namespace pheno {

// Descriptive statistics used throughout feature extraction. Population
// variance (divide by n) unless noted; empty input yields NaN.
double vec_mean(const std::vector<double>& v);
double vec_std(const std::vector<double>& v);         // population
double vec_std_sample(const std::vector<double>& v);  // divide by n-1
double vec_min(const std::vector<double>& v);
double vec_max(const std::vector<double>& v);
double vec_median(std::vector<double> v);
// Linear-interpolation quantile (R type 7); q in [0,1]; v need not be sorted.
double vec_quantile(std::vector<double> v, double q);
double vec_sum(const std::vector<double>& v);

// Special functions. Implementations are accurate to ~1e-12 relative which
// comfortably covers the 1e-10 p-value requirement.
double lgamma_fn(double x);
// Regularized incomplete beta I_x(a,b) via Lentz continued fraction.
double incbeta(double a, double b, double x);
// Regularized lower incomplete gamma P(a,x) (series + continued fraction).
double gammainc_lower(double a, double x);
// Standard normal CDF.
double norm_cdf(double z);

// Student-t two-sided tail: P(|T_nu| >= t).
double t_sf_two_sided(double t, double nu);
// Chi-squared CDF with k dof.
double chi2_cdf(double x, double k);

}  // namespace pheno
