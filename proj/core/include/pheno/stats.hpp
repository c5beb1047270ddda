#pragma once

#include <vector>

namespace pheno {

struct TestResult {
  double statistic;
  double p;
};

// Paired t on the differences: t = mean/(sd/sqrt(n)), sample sd, two-sided p
// from the Student-t distribution with n-1 dof. Throws DegenerateSample for
// n < 2 or zero variance.
TestResult paired_t_test(const std::vector<double>& diffs);

// Wilcoxon signed-rank on the differences. Zero differences are dropped
// (throws AllZeroDiffs if none remain). |d| ranked with midranks;
// W = min(W+, W-). Exact two-sided p for n <= 20 as P(min(W+,W-) <= W_obs)
// over all 2^n equiprobable sign assignments (computed by dynamic
// programming over half-unit ranks); for n > 20 a normal approximation with
// tie and continuity corrections.
TestResult wilcoxon_signed_rank(const std::vector<double>& diffs);

// Midranks of |values| (1-based, ties averaged); helper shared with tests.
std::vector<double> midranks_abs(const std::vector<double>& values);

}  // namespace pheno
