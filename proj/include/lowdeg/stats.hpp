#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lowdeg {

// Upper tail P[X > x] of a chi-square variable with df degrees of freedom.
double chi_square_sf(double x, double df);

// Pearson goodness of fit of counts against the uniform law on the cells.
double chi_square_uniform_pvalue(std::span<const std::uint64_t> counts);

// Asymptotic Kolmogorov tail P[K > x] = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 x^2).
double kolmogorov_sf(double x);

double normal_cdf(double x);

// One-sample Kolmogorov-Smirnov test against N(0, 1), using Stephens'
// finite-sample correction (sqrt(n) + 0.12 + 0.11 / sqrt(n)) D.
struct KsResult {
  double statistic = 0.0;
  double pvalue = 1.0;
};
KsResult ks_test_normal(std::vector<double> samples);

struct Interval {
  double low = 0.0;
  double high = 0.0;
  bool contains(double x) const { return low <= x && x <= high; }
  bool overlaps(const Interval& o) const { return low <= o.high && o.low <= high; }
};

// Wilson score interval; z = 1.959964 gives 95%. n = 0 yields [0, 1].
Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z = 1.959963984540054);

double mean(std::span<const double> x);
// Unbiased sample variance; 0 for fewer than two values.
double sample_variance(std::span<const double> x);

// Empirical quantile with linear interpolation, p in [0, 1]. Sorts a copy.
double quantile(std::vector<double> x, double p);

}  // namespace lowdeg
