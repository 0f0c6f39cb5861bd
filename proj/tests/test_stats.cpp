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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dpsb/stats.hpp"

using namespace dpsb;

TEST_CASE("summarize and summarize_power") {
  std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  auto s = summarize(xs);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.variance == doctest::Approx(5.0 / 3.0));
  CHECK(s.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(s.n == 4);

  auto s2 = summarize_power(xs, 2);
  CHECK(s2.mean == doctest::Approx(30.0 / 4.0));
}

TEST_CASE("survival_fraction counts x >= threshold") {
  std::vector<double> xs{0.1, 0.5, 0.5, 0.9};
  auto s = survival_fraction(xs, 0.5);
  CHECK(s.mean == doctest::Approx(0.75));
  CHECK(s.se == doctest::Approx(std::sqrt(0.75 * 0.25 / 4.0)));
}

TEST_CASE("ks_statistic on a tiny hand-computed sample") {
  // against F(x) = x: D = max over {7/30, 4/15, 1/5} = 4/15
  const double d =
      ks_statistic({0.8, 0.1, 0.4}, [](double x) { return x; });
  CHECK(d == doctest::Approx(4.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("ks_critical_value matches the asymptotic formula") {
  CHECK(ks_critical_value(100, 0.05) ==
        doctest::Approx(1.3581015157406195 / 10.0).epsilon(1e-12));
  CHECK(ks_critical_value(1000000, 0.001) ==
        doctest::Approx(1.9494746035204051 / 1000.0).epsilon(1e-12));
  CHECK(ks_critical_value(100, 0.001) > ks_critical_value(100, 0.05));
}

TEST_CASE("KS accepts a true uniform sample and rejects a skewed one") {
  auto rng = make_stream(41, 1, 0);
  const std::size_t n = 100000;
  std::vector<double> uniform(n), skewed(n);
  for (std::size_t i = 0; i < n; ++i) {
    uniform[i] = uniform01(rng);
    skewed[i] = uniform[i] * uniform[i];
  }
  auto cdf = [](double x) { return x; };
  CHECK(ks_statistic(uniform, cdf) < ks_critical_value(n, 0.001));
  CHECK(ks_statistic(skewed, cdf) > ks_critical_value(n, 0.001));
}

TEST_CASE("chi_square_independence") {
  auto rng = make_stream(41, 2, 0);
  const std::size_t n = 100000;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = uniform01(rng);
    ys[i] = uniform01(rng);
  }
  auto quantile = [](double p) { return p; };  // uniform marginals

  SUBCASE("df and critical value for a 10x10 table") {
    auto r = chi_square_independence(xs, ys, quantile, 10, 0.001);
    CHECK(r.df == 81);
    // 0.999 quantile of chi-square with 81 degrees of freedom
    CHECK(r.critical == doctest::Approx(126.08255833316952).epsilon(1e-6));
  }

  SUBCASE("independent pairs pass") {
    auto r = chi_square_independence(xs, ys, quantile, 10, 0.001);
    CHECK(r.statistic < r.critical);
  }

  SUBCASE("identical pairs fail wildly") {
    auto r = chi_square_independence(xs, xs, quantile, 10, 0.001);
    CHECK(r.statistic > 100.0 * r.critical);
  }
}

TEST_CASE("bootstrap SE of the product-moment gap is calibrated") {
  auto rng = make_stream(41, 3, 0);
  const std::size_t n = 100000;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = uniform01(rng);
    ys[i] = uniform01(rng);
  }
  const double se =
      bootstrap_product_gap_se(xs, ys, 1, 1, 200, 99, salt_of("boot"), 2);
  // independent uniforms: sd of the gap is sd(x) sd(y) / sqrt(n) = 1/(12 sqrt n)
  const double want = 1.0 / 12.0 / std::sqrt(static_cast<double>(n));
  CHECK(se / want > 0.7);
  CHECK(se / want < 1.4);

  // the observed gap itself is consistent with zero at 5 SE
  const double joint = [&] {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += xs[i] * ys[i];
    return acc / n;
  }();
  const double gap = joint - summarize(xs).mean * summarize(ys).mean;
  CHECK(std::fabs(gap) < 5 * se);

  // deterministic given (seed, salt), independent of worker count
  CHECK(bootstrap_product_gap_se(xs, ys, 1, 1, 200, 99, salt_of("boot"), 1) ==
        se);
}

TEST_CASE("pearson correlation") {
  std::vector<double> xs{0.1, 0.2, 0.7, 0.9};
  std::vector<double> neg{0.9, 0.8, 0.3, 0.1};
  CHECK(pearson_correlation(xs, xs) == doctest::Approx(1.0));
  CHECK(pearson_correlation(xs, neg) == doctest::Approx(-1.0));

  auto rng = make_stream(41, 4, 0);
  const std::size_t n = 50000;
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = uniform01(rng);
    b[i] = uniform01(rng);
  }
  CHECK(std::fabs(pearson_correlation(a, b)) <
        4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("variance and covariance summaries with standard errors") {
  auto rng = make_stream(41, 5, 0);
  const std::size_t n = 200000;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = uniform01(rng);
    ys[i] = uniform01(rng);
  }

  auto v = variance_with_se(xs);
  CHECK(std::fabs(v.value - 1.0 / 12.0) < 4 * v.se);
  CHECK(v.se > 0.0);

  auto cv = covariance_with_se(xs, ys);
  CHECK(std::fabs(cv.value) < 4 * cv.se);

  auto cself = covariance_with_se(xs, xs);
  CHECK(cself.value == doctest::Approx(v.value).epsilon(1e-12));
}
