#include "pheno/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "pheno/error.hpp"
#include "pheno/numeric.hpp"

namespace pheno {

TestResult paired_t_test(const std::vector<double>& diffs) {
  const std::size_t n = diffs.size();
  if (n < 2) throw Error(Errc::DegenerateSample, "paired t-test needs at least two pairs");
  const double m = vec_mean(diffs);
  double ss = 0.0;
  for (double d : diffs) ss += (d - m) * (d - m);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (sd == 0.0) throw Error(Errc::DegenerateSample, "zero variance in differences");
  const double t = m / (sd / std::sqrt(static_cast<double>(n)));
  return {t, t_sf_two_sided(t, static_cast<double>(n - 1))};
}

std::vector<double> midranks_abs(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(values[a]) < std::fabs(values[b]);
  });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n &&
           std::fabs(values[order[j + 1]]) == std::fabs(values[order[i]]))
      ++j;
    // 1-based ranks i+1 .. j+1 averaged
    const double r = 0.5 * static_cast<double>((i + 1) + (j + 1));
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

namespace {

// Exact two-sided p: over all 2^n sign assignments, the share with
// min(W+, W-) <= observed. Ranks are multiples of 0.5 (midranks), so double
// them to integers and run a subset-sum count over W+.
double exact_wilcoxon_p(const std::vector<double>& ranks, double w_obs) {
  const std::size_t n = ranks.size();
  std::int64_t total2 = 0;
  std::vector<std::int64_t> r2(n);
  for (std::size_t i = 0; i < n; ++i) {
    r2[i] = static_cast<std::int64_t>(std::llround(ranks[i] * 2.0));
    total2 += r2[i];
  }
  // counts[s] = number of assignments with doubled W+ == s
  std::vector<double> counts(static_cast<std::size_t>(total2) + 1, 0.0);
  counts[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::int64_t s = total2; s >= r2[i]; --s)
      counts[static_cast<std::size_t>(s)] +=
          counts[static_cast<std::size_t>(s - r2[i])];
  }
  const std::int64_t w2 = static_cast<std::int64_t>(std::llround(w_obs * 2.0));
  double hits = 0.0;
  for (std::int64_t s = 0; s <= total2; ++s) {
    const std::int64_t wmin = std::min(s, total2 - s);
    if (wmin <= w2) hits += counts[static_cast<std::size_t>(s)];
  }
  return hits / std::pow(2.0, static_cast<double>(n));
}

}  // namespace

TestResult wilcoxon_signed_rank(const std::vector<double>& diffs) {
  std::vector<double> d;
  d.reserve(diffs.size());
  for (double v : diffs)
    if (v != 0.0) d.push_back(v);
  if (d.empty()) throw Error(Errc::AllZeroDiffs, "all differences are zero");

  const std::size_t n = d.size();
  const auto ranks = midranks_abs(d);
  double w_plus = 0.0, w_minus = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] > 0.0)
      w_plus += ranks[i];
    else
      w_minus += ranks[i];
  }
  const double w = std::min(w_plus, w_minus);

  if (n <= 20) return {w, std::min(1.0, exact_wilcoxon_p(ranks, w))};

  // Normal approximation with tie correction on the variance and a 0.5
  // continuity correction toward the mean (W = min is always <= mean).
  const double dn = static_cast<double>(n);
  const double mu = dn * (dn + 1.0) / 4.0;
  double tie_term = 0.0;
  {
    std::vector<double> mags(n);
    for (std::size_t i = 0; i < n; ++i) mags[i] = std::fabs(d[i]);
    std::sort(mags.begin(), mags.end());
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && mags[j + 1] == mags[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
  }
  const double var = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0 - tie_term / 48.0;
  if (var <= 0.0) return {w, 1.0};
  const double z = (w - mu + 0.5) / std::sqrt(var);
  return {w, std::min(1.0, 2.0 * norm_cdf(z))};
}

}  // namespace pheno
