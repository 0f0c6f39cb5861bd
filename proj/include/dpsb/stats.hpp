// Copyright 2026 The dpsb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Statistical primitives for the verification suites: moment summaries,
// one-sample Kolmogorov-Smirnov, a binned chi-square independence test,
// and bootstrap standard errors for product-moment factorization gaps.

#ifndef DPSB_STATS_HPP_
#define DPSB_STATS_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "dpsb/rng.hpp"

namespace dpsb {

struct MomentSummary {
  double mean;
  double variance;  // unbiased sample variance
  double se;        // standard error of the mean
  std::size_t n;
};

MomentSummary summarize(std::span<const double> xs);

// Summary of x^power over the sample.
MomentSummary summarize_power(std::span<const double> xs, int power);

// Fraction of the sample with x >= threshold, with binomial SE.
MomentSummary survival_fraction(std::span<const double> xs, double threshold);

// sup_x |F_n(x) - F(x)| for a continuous reference CDF. The sample is
// taken by value because it must be sorted.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

// Asymptotic one-sample critical value: sqrt(-log(alpha/2) / (2n)).
double ks_critical_value(std::size_t n, double alpha);

struct ChiSquareResult {
  double statistic;
  double critical;  // (1 - alpha) quantile of chi-square with df degrees
  std::size_t df;
};

// Chi-square independence test on a bins x bins contingency table. Cell
// edges come from `quantile` at equiprobable levels, expected counts from
// the table margins; df = (bins-1)^2.
ChiSquareResult chi_square_independence(
    std::span<const double> xs, std::span<const double> ys,
    const std::function<double(double)>& quantile, std::size_t bins,
    double alpha);

// Bootstrap SEs of  mean(x^n y^m) - mean(x^n) mean(y^m)  for several (n, m)
// orders over `resamples` shared index resamples. Resample r uses stream
// (seed, salt, r), so the result does not depend on worker scheduling.
std::vector<double> bootstrap_product_gaps_se(
    std::span<const double> xs, std::span<const double> ys,
    std::span<const std::pair<int, int>> orders, std::size_t resamples,
    std::uint64_t seed, std::uint64_t salt, unsigned workers);

// Single-order convenience wrapper.
double bootstrap_product_gap_se(std::span<const double> xs,
                                std::span<const double> ys, int n, int m,
                                std::size_t resamples, std::uint64_t seed,
                                std::uint64_t salt, unsigned workers);

double pearson_correlation(std::span<const double> xs,
                           std::span<const double> ys);

struct SpreadSummary {
  double value;  // sample variance or covariance
  double se;     // large-sample standard error
};

// Unbiased sample variance with SE from the fourth central moment.
SpreadSummary variance_with_se(std::span<const double> xs);

// Sample covariance with SE from the second moment of the cross products.
SpreadSummary covariance_with_se(std::span<const double> xs,
                                 std::span<const double> ys);

}  // namespace dpsb

#endif  // DPSB_STATS_HPP_
