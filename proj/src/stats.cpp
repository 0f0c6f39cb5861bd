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

#include "dpsb/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "dpsb/detail/parallel.hpp"

namespace dpsb {

namespace detail {

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body) {
  workers = resolve_workers(workers);
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

namespace {

double ipow(double x, int n) {
  double acc = 1.0;
  for (int i = 0; i < n; ++i) acc *= x;
  return acc;
}

}  // namespace

MomentSummary summarize(std::span<const double> xs) {
  const auto n = static_cast<double>(xs.size());
  if (xs.size() < 2) throw std::invalid_argument("need at least two samples");
  double acc = 0.0;
  for (double x : xs) acc += x;
  const double mean = acc / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double variance = ss / (n - 1.0);
  return {mean, variance, std::sqrt(variance / n), xs.size()};
}

MomentSummary summarize_power(std::span<const double> xs, int power) {
  const auto n = static_cast<double>(xs.size());
  if (xs.size() < 2) throw std::invalid_argument("need at least two samples");
  double acc = 0.0;
  for (double x : xs) acc += ipow(x, power);
  const double mean = acc / n;
  double ss = 0.0;
  for (double x : xs) {
    const double d = ipow(x, power) - mean;
    ss += d * d;
  }
  const double variance = ss / (n - 1.0);
  return {mean, variance, std::sqrt(variance / n), xs.size()};
}

MomentSummary survival_fraction(std::span<const double> xs, double threshold) {
  const auto n = static_cast<double>(xs.size());
  if (xs.size() < 2) throw std::invalid_argument("need at least two samples");
  double hits = 0.0;
  for (double x : xs)
    if (x >= threshold) hits += 1.0;
  const double p = hits / n;
  const double variance = p * (1.0 - p);
  return {p, variance, std::sqrt(variance / n), xs.size()};
}

double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

double ks_critical_value(std::size_t n, double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("alpha must lie strictly in (0,1)");
  if (n == 0) throw std::invalid_argument("n must be positive");
  return std::sqrt(-std::log(alpha / 2.0) / (2.0 * static_cast<double>(n)));
}

ChiSquareResult chi_square_independence(
    std::span<const double> xs, std::span<const double> ys,
    const std::function<double(double)>& quantile, std::size_t bins,
    double alpha) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("paired samples must align");
  if (bins < 2) throw std::invalid_argument("need at least two bins");

  std::vector<double> edges(bins - 1);
  for (std::size_t k = 1; k < bins; ++k)
    edges[k - 1] =
        quantile(static_cast<double>(k) / static_cast<double>(bins));

  auto bin_of = [&](double v) {
    return static_cast<std::size_t>(
        std::upper_bound(edges.begin(), edges.end(), v) - edges.begin());
  };

  std::vector<double> counts(bins * bins, 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i)
    counts[bin_of(xs[i]) * bins + bin_of(ys[i])] += 1.0;

  std::vector<double> row(bins, 0.0), col(bins, 0.0);
  for (std::size_t a = 0; a < bins; ++a)
    for (std::size_t b = 0; b < bins; ++b) {
      row[a] += counts[a * bins + b];
      col[b] += counts[a * bins + b];
    }

  const auto total = static_cast<double>(xs.size());
  double statistic = 0.0;
  for (std::size_t a = 0; a < bins; ++a)
    for (std::size_t b = 0; b < bins; ++b) {
      const double expected = row[a] * col[b] / total;
      if (expected > 0.0) {
        const double d = counts[a * bins + b] - expected;
        statistic += d * d / expected;
      }
    }

  const std::size_t df = (bins - 1) * (bins - 1);
  const double critical = boost::math::quantile(
      boost::math::chi_squared(static_cast<double>(df)), 1.0 - alpha);
  return {statistic, critical, df};
}

std::vector<double> bootstrap_product_gaps_se(
    std::span<const double> xs, std::span<const double> ys,
    std::span<const std::pair<int, int>> orders, std::size_t resamples,
    std::uint64_t seed, std::uint64_t salt, unsigned workers) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("paired samples must align");
  if (resamples < 2) throw std::invalid_argument("need >= 2 resamples");
  if (orders.empty()) throw std::invalid_argument("no moment orders given");
  const std::size_t count = xs.size();

  int max_n = 1, max_m = 1;
  for (const auto& [n, m] : orders) {
    if (n < 1 || m < 1)
      throw std::invalid_argument("moment orders must be >= 1");
    max_n = std::max(max_n, n);
    max_m = std::max(max_m, m);
  }
  if (max_n > 8 || max_m > 8)
    throw std::invalid_argument("moment orders above 8 are not supported");

  // gaps[p][r]: all orders share the same index resamples
  std::vector<std::vector<double>> gaps(orders.size(),
                                        std::vector<double>(resamples));
  detail::parallel_for(resamples, workers, [&](std::size_t r) {
    auto rng = make_stream(seed, salt, r);
    std::uniform_int_distribution<std::size_t> pick(0, count - 1);
    double sx[9] = {0}, sy[9] = {0};
    double sxy[9][9] = {{0}};
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t k = pick(rng);
      double px[9], py[9];
      px[1] = xs[k];
      for (int p = 2; p <= max_n; ++p) px[p] = px[p - 1] * xs[k];
      py[1] = ys[k];
      for (int p = 2; p <= max_m; ++p) py[p] = py[p - 1] * ys[k];
      for (int p = 1; p <= max_n; ++p) sx[p] += px[p];
      for (int p = 1; p <= max_m; ++p) sy[p] += py[p];
      for (int p = 1; p <= max_n; ++p)
        for (int q = 1; q <= max_m; ++q) sxy[p][q] += px[p] * py[q];
    }
    const auto total = static_cast<double>(count);
    for (std::size_t p = 0; p < orders.size(); ++p) {
      const auto [n, m] = orders[p];
      gaps[p][r] = sxy[n][m] / total - (sx[n] / total) * (sy[m] / total);
    }
  });

  std::vector<double> out(orders.size());
  for (std::size_t p = 0; p < orders.size(); ++p)
    out[p] = std::sqrt(summarize(gaps[p]).variance);
  return out;
}

double bootstrap_product_gap_se(std::span<const double> xs,
                                std::span<const double> ys, int n, int m,
                                std::size_t resamples, std::uint64_t seed,
                                std::uint64_t salt, unsigned workers) {
  const std::pair<int, int> order[] = {{n, m}};
  return bootstrap_product_gaps_se(xs, ys, order, resamples, seed, salt,
                                   workers)[0];
}

double pearson_correlation(std::span<const double> xs,
                           std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("paired samples must align");
  const auto mx = summarize(xs).mean;
  const auto my = summarize(ys).mean;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

SpreadSummary variance_with_se(std::span<const double> xs) {
  const auto s = summarize(xs);
  const auto n = static_cast<double>(xs.size());
  double m4 = 0.0;
  for (double x : xs) {
    const double d = (x - s.mean) * (x - s.mean);
    m4 += d * d;
  }
  m4 /= n;
  // large-sample Var(s^2) = (mu4 - sigma^4) / n
  return {s.variance, std::sqrt(std::max(m4 - s.variance * s.variance, 0.0) / n)};
}

SpreadSummary covariance_with_se(std::span<const double> xs,
                                 std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("paired samples must align");
  const auto n = static_cast<double>(xs.size());
  const double mx = summarize(xs).mean;
  const double my = summarize(ys).mean;
  double scov = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    scov += (xs[i] - mx) * (ys[i] - my);
  const double cov = scov / (n - 1.0);
  // SE from the spread of the cross products
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = (xs[i] - mx) * (ys[i] - my) - cov;
    ss += d * d;
  }
  return {cov, std::sqrt(ss / n / n)};
}

}  // namespace dpsb
