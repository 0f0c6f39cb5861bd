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
// Test-only oracles, deliberately independent of the library code paths
// they check: plain quadrature instead of log-gamma ratios, brute-force
// series instead of closed forms, and textbook moment formulas.

#ifndef DPSB_TESTS_ORACLES_HPP_
#define DPSB_TESTS_ORACLES_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracles {

// Composite Simpson on [lo, hi]; plenty for the smooth integrands below.
inline double simpson(const std::function<double(double)>& f, double lo,
                      double hi, int intervals) {
  const double h = (hi - lo) / intervals;
  double acc = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i)
    acc += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// E[V^n] for V ~ beta(a, b) by numerical integration of both the moment
// integral and the normalizer; no gamma functions involved.
inline double quad_beta_moment(double a, double b, int n) {
  auto kernel = [&](double x) {
    return std::pow(x, a - 1.0) * std::pow(1.0 - x, b - 1.0);
  };
  auto moment_kernel = [&](double x) { return std::pow(x, n) * kernel(x); };
  const int k = 1 << 14;
  return simpson(moment_kernel, 0.0, 1.0, k) / simpson(kernel, 0.0, 1.0, k);
}

// Brute-force partial sum of the latent-index pmf.
inline double geometric_partial_sum(double c, std::size_t j_max) {
  const double p = 1.0 / (c + 1.0);
  const double r = c / (c + 1.0);
  // smallest terms first so the sum is accurate to ~1 ulp
  double acc = 0.0;
  for (std::size_t j = j_max; j >= 1; --j)
    acc += p * std::pow(r, static_cast<double>(j - 1));
  return acc;
}

// Textbook beta moments (independent of the log-gamma route).
inline double beta_mean(double a, double b) { return a / (a + b); }
inline double beta_variance(double a, double b) {
  return a * b / ((a + b) * (a + b) * (a + b + 1.0));
}

// Dirichlet moments for alpha_0 = sum(alpha).
inline double dirichlet_mean(const std::vector<double>& alpha, std::size_t i) {
  double a0 = 0.0;
  for (double a : alpha) a0 += a;
  return alpha[i] / a0;
}
inline double dirichlet_variance(const std::vector<double>& alpha,
                                 std::size_t i) {
  double a0 = 0.0;
  for (double a : alpha) a0 += a;
  return alpha[i] * (a0 - alpha[i]) / (a0 * a0 * (a0 + 1.0));
}
inline double dirichlet_covariance(const std::vector<double>& alpha,
                                   std::size_t i, std::size_t j) {
  double a0 = 0.0;
  for (double a : alpha) a0 += a;
  return -alpha[i] * alpha[j] / (a0 * a0 * (a0 + 1.0));
}

// Plain mean / SE helpers so sampler checks do not lean on the library's
// own statistics module.
inline double mean_of(const std::vector<double>& xs) {
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc / static_cast<double>(xs.size());
}
inline double se_of_mean(const std::vector<double>& xs) {
  const double m = mean_of(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  const auto n = static_cast<double>(xs.size());
  return std::sqrt(acc / (n - 1.0) / n);
}
// Unbiased sample variance and the large-sample SE of that variance.
inline double variance_of(const std::vector<double>& xs) {
  const double m = mean_of(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return acc / (static_cast<double>(xs.size()) - 1.0);
}
inline double se_of_variance(const std::vector<double>& xs) {
  const double m = mean_of(xs);
  const double v = variance_of(xs);
  double m4 = 0.0;
  for (double x : xs) {
    const double d = (x - m) * (x - m);
    m4 += d * d;
  }
  const auto n = static_cast<double>(xs.size());
  m4 /= n;
  return std::sqrt((m4 - v * v) / n);
}

}  // namespace oracles

#endif  // DPSB_TESTS_ORACLES_HPP_
