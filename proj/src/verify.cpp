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

#include "dpsb/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dpsb/detail/parallel.hpp"
#include "dpsb/stats.hpp"

namespace dpsb {

namespace {

// Fixed chunk width: results must not depend on the worker count, so the
// chunk grid (and with it every stream) is a function of the sample count
// alone.
constexpr std::size_t kChunk = 8192;

// Floor below which rejection conditioning is statistically meaningless.
constexpr std::size_t kAcceptedFloor = 1000;

std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string fmt(std::size_t v) { return std::to_string(v); }

// Generates draws in fixed chunks; body(i, rng) runs for every index with
// the chunk's stream. Reductions happen after, in index order.
void for_each_draw(std::size_t total, unsigned workers, std::uint64_t seed,
                   std::string_view suite,
                   const std::function<void(std::size_t, RngEngine&)>& body) {
  const std::uint64_t salt = salt_of(suite);
  const std::size_t chunks = (total + kChunk - 1) / kChunk;
  detail::parallel_for(chunks, workers, [&](std::size_t ci) {
    auto rng = make_stream(seed, salt, ci);
    const std::size_t end = std::min(total, (ci + 1) * kChunk);
    for (std::size_t i = ci * kChunk; i < end; ++i) body(i, rng);
  });
}

double beta1c_cdf(double c, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return -std::expm1(c * std::log1p(-x));  // 1 - (1-x)^c
}

double beta1c_quantile(double c, double p) {
  return -std::expm1(std::log1p(-p) / c);  // 1 - (1-p)^{1/c}
}

double rel_gap(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

void maybe_log(SampleLog* log, std::string name, std::vector<double> sample) {
  if (log) log->emplace_back(std::move(name), std::move(sample));
}

TestReport moment_report(const std::string& name,
                         std::span<const double> sample, int n,
                         double reference, const TestConfig& cfg) {
  const auto s = summarize_power(sample, n);
  return TestReport::two_sided(name, s.mean, reference, s.se,
                               cfg.se_multiplier * s.se, cfg.seed, s.n);
}

TestReport ks_report(const std::string& name, std::vector<double> sample,
                     double c, const TestConfig& cfg) {
  const std::size_t n = sample.size();
  const double d = ks_statistic(
      std::move(sample), [c](double x) { return beta1c_cdf(c, x); });
  return TestReport::one_sided(name, d, ks_critical_value(n, cfg.ks_alpha),
                               cfg.seed, n);
}

// Marginal beta(1,c) battery: moments n = 1..moments_max plus KS.
void beta1c_battery(std::vector<TestReport>& out, const std::string& prefix,
                    const std::vector<double>& sample, const TestConfig& cfg) {
  const double c = cfg.c.value();
  for (int n = 1; n <= cfg.moments_max; ++n)
    out.push_back(moment_report(prefix + "/moment/n=" + fmt(std::size_t(n)),
                                sample, n,
                                beta_moment(BetaParams(1.0, c), n), cfg));
  out.push_back(ks_report(prefix + "/ks", sample, c, cfg));
}

double joint_moment(std::span<const double> xs, std::span<const double> ys,
                    int n, int m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double a = xs[i], b = ys[i];
    for (int p = 1; p < n; ++p) a *= xs[i];
    for (int p = 1; p < m; ++p) b *= ys[i];
    acc += a * b;
  }
  return acc / static_cast<double>(xs.size());
}

// Product-moment factorization reports for (n, m) in {1,2}^2, with the
// bootstrap SEs computed in one shared resampling pass.
void factorization_reports(std::vector<TestReport>& out,
                           const std::string& prefix,
                           std::span<const double> xs,
                           std::span<const double> ys, const TestConfig& cfg,
                           std::uint64_t boot_salt) {
  const std::pair<int, int> orders[] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  const auto ses = bootstrap_product_gaps_se(xs, ys, orders, 200, cfg.seed,
                                             boot_salt, cfg.workers);
  for (std::size_t p = 0; p < std::size(orders); ++p) {
    const auto [n, m] = orders[p];
    const double joint = joint_moment(xs, ys, n, m);
    const double marginal =
        summarize_power(xs, n).mean * summarize_power(ys, m).mean;
    out.push_back(TestReport::two_sided(
        prefix + "/factorization/n=" + fmt(std::size_t(n)) +
            "/m=" + fmt(std::size_t(m)),
        joint, marginal, ses[p], cfg.se_multiplier * ses[p], cfg.seed,
        xs.size()));
  }
}

const double kSurvivalGrid[] = {0.1, 0.5, 0.9};

}  // namespace

void TestConfig::validate() const {
  if (samples < 1000)
    throw std::invalid_argument("samples must be >= 1000");
  if (moments_max < 1)
    throw std::invalid_argument("moments_max must be >= 1");
  if (levels.empty())
    throw std::invalid_argument("levels must be nonempty");
  for (auto l : levels)
    if (l < 1) throw std::invalid_argument("levels must be >= 1");
  if (!(se_multiplier > 0.0))
    throw std::invalid_argument("se_multiplier must be > 0");
  if (!(ks_alpha > 0.0) || !(ks_alpha < 1.0))
    throw std::invalid_argument("ks_alpha must lie strictly in (0,1)");
}

TestReport TestReport::two_sided(std::string name, double statistic,
                                 double reference, double standard_error,
                                 double threshold, std::uint64_t seed,
                                 std::size_t samples_used, std::string note) {
  TestReport r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.reference = reference;
  r.standard_error = standard_error;
  r.threshold = threshold;
  r.pass = std::fabs(statistic - reference) <= threshold;
  r.seed = seed;
  r.samples_used = samples_used;
  r.note = std::move(note);
  return r;
}

TestReport TestReport::one_sided(std::string name, double statistic,
                                 double threshold, std::uint64_t seed,
                                 std::size_t samples_used, std::string note) {
  TestReport r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.reference = 0.0;
  r.standard_error = 0.0;
  r.threshold = threshold;
  r.pass = statistic <= threshold;
  r.seed = seed;
  r.samples_used = samples_used;
  r.note = std::move(note);
  return r;
}

Partition::Partition(std::vector<double> boundaries_in, double x_in)
    : boundaries(std::move(boundaries_in)), x(x_in) {
  if (boundaries.empty())
    throw std::invalid_argument("partition needs at least one boundary");
  double prev = 0.0;
  for (double b : boundaries) {
    if (!(b > prev) || !(b < 1.0))
      throw std::invalid_argument(
          "boundaries must be strictly increasing inside (0,1)");
    prev = b;
  }
  if (!(x > 0.0) || !(x < 1.0))
    throw std::invalid_argument("observation must lie inside (0,1)");
  cell_of_x = cell_of(x);
}

std::pair<double, double> Partition::cell_bounds(std::size_t i) const {
  if (i >= cells()) throw std::out_of_range("cell index");
  const double lo = i == 0 ? 0.0 : boundaries[i - 1];
  const double hi = i == cells() - 1 ? 1.0 : boundaries[i];
  return {lo, hi};
}

double Partition::g_mass(std::size_t i) const {
  const auto [lo, hi] = cell_bounds(i);
  return hi - lo;
}

std::size_t Partition::cell_of(double value) const {
  // cell i is (b_{i-1}, b_i]; first boundary >= value names the cell
  return static_cast<std::size_t>(
      std::lower_bound(boundaries.begin(), boundaries.end(), value) -
      boundaries.begin());
}

double oracle_psi_moment(const Concentration& c, std::size_t j, std::size_t l,
                         int n) {
  if (l < 1 || l >= j)
    throw std::invalid_argument("oracle_psi_moment needs 1 <= l < j");
  if (n < 1) throw std::invalid_argument("moment order must be >= 1");
  const double cv = c.value();
  const double log_lead = std::lgamma(2.0 + cv) + std::lgamma(n + 2.0) -
                          std::lgamma(n + 2.0 + cv);
  const double log_geom = static_cast<double>(j - l - 1) *
                          (std::log(cv + 1.0) - std::log(cv + 1.0 + n));
  return std::exp(log_lead + log_geom);
}

std::vector<TestReport> verify_theorem1(const TestConfig& cfg,
                                        SampleLog* log) {
  cfg.validate();
  const double c = cfg.c.value();
  const std::string prefix = "theorem1/c=" + fmt(c);

  std::vector<double> wx(cfg.samples);
  for_each_draw(cfg.samples, cfg.workers, cfg.seed, "theorem1",
                [&](std::size_t i, RngEngine& rng) {
                  const auto j = static_cast<std::size_t>(
                      sample_latent_index(cfg.c, rng));
                  auto sticks =
                      sample_posterior_sticks(cfg.c, j, cfg.policy, rng);
                  wx[i] = compute_w_x(sticks);
                });

  std::vector<TestReport> out;
  beta1c_battery(out, prefix, wx, cfg);
  maybe_log(log, "w_x", std::move(wx));
  return out;
}

std::vector<TestReport> verify_theorem2(const TestConfig& cfg,
                                        SampleLog* log) {
  cfg.validate();
  const double c = cfg.c.value();
  const std::size_t max_level =
      *std::max_element(cfg.levels.begin(), cfg.levels.end());

  // one pass yields h at every requested level plus the latent index
  std::vector<std::vector<double>> h(cfg.levels.size(),
                                     std::vector<double>(cfg.samples));
  std::vector<std::uint32_t> latent(cfg.samples);
  for_each_draw(
      cfg.samples, cfg.workers, cfg.seed, "theorem2",
      [&](std::size_t i, RngEngine& rng) {
        const auto j =
            static_cast<std::size_t>(sample_latent_index(cfg.c, rng));
        auto sticks =
            sample_posterior_sticks(cfg.c, j, cfg.policy, rng, max_level + 1);
        latent[i] = static_cast<std::uint32_t>(
            std::min<std::size_t>(j, std::numeric_limits<std::uint32_t>::max()));
        for (std::size_t k = 0; k < cfg.levels.size(); ++k)
          h[k][i] = compute_h_closed_form(sticks, cfg.levels[k]);
      });

  const std::string survival_note =
      "reference uses (1-y)^c, the beta(1,c) survival function; the "
      "(1-y^c) reading is inconsistent with the beta(1,c) marginal";

  std::vector<TestReport> out;
  for (std::size_t k = 0; k < cfg.levels.size(); ++k) {
    const std::size_t l = cfg.levels[k];
    const std::string prefix =
        "theorem2/c=" + fmt(c) + "/l=" + fmt(l);
    beta1c_battery(out, prefix, h[k], cfg);

    for (double y : kSurvivalGrid) {
      // marginal survival P(h_l >= y) = (1-y)^c
      const auto sf = survival_fraction(h[k], y);
      out.push_back(TestReport::two_sided(
          prefix + "/survival/y=" + fmt(y), sf.mean,
          std::pow(1.0 - y, c), sf.se, cfg.se_multiplier * sf.se, cfg.seed,
          sf.n, survival_note));

      // first-term split P(h_l >= y, J <= l) = (1-y)^c (1 - (c/(1+c))^l)
      double hits = 0.0;
      for (std::size_t i = 0; i < cfg.samples; ++i)
        if (h[k][i] >= y && latent[i] <= l) hits += 1.0;
      const double p = hits / static_cast<double>(cfg.samples);
      const double se =
          std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.samples));
      const double want =
          std::pow(1.0 - y, c) *
          (1.0 - std::pow(c / (1.0 + c), static_cast<double>(l)));
      out.push_back(TestReport::two_sided(
          prefix + "/split/y=" + fmt(y), p, want, se,
          cfg.se_multiplier * se, cfg.seed, cfg.samples, survival_note));
    }
  }

  for (std::size_t k = 0; k < cfg.levels.size(); ++k)
    maybe_log(log, "h_l=" + fmt(cfg.levels[k]), std::move(h[k]));
  return out;
}

std::vector<TestReport> verify_lemma1(const TestConfig& cfg, SampleLog* log) {
  cfg.validate();
  const double c = cfg.c.value();

  // psi_{J,l} for every level with J > l; NaN marks rejected draws
  std::vector<std::vector<double>> psi(
      cfg.levels.size(),
      std::vector<double>(cfg.samples, std::numeric_limits<double>::quiet_NaN()));
  for_each_draw(cfg.samples, cfg.workers, cfg.seed, "lemma1",
                [&](std::size_t i, RngEngine& rng) {
                  const auto j = static_cast<std::size_t>(
                      sample_latent_index(cfg.c, rng));
                  auto sticks =
                      sample_posterior_sticks(cfg.c, j, cfg.policy, rng);
                  for (std::size_t k = 0; k < cfg.levels.size(); ++k)
                    if (j > cfg.levels[k])
                      psi[k][i] = compute_psi(sticks, cfg.levels[k]);
                });

  std::vector<TestReport> out;
  for (std::size_t k = 0; k < cfg.levels.size(); ++k) {
    const std::size_t l = cfg.levels[k];
    const std::string prefix = "lemma1/c=" + fmt(c) + "/l=" + fmt(l);

    std::vector<double> accepted;
    accepted.reserve(cfg.samples);
    for (double v : psi[k])
      if (!std::isnan(v)) accepted.push_back(v);
    if (accepted.size() < kAcceptedFloor)
      throw undersampling_error(accepted.size(), kAcceptedFloor);

    const double rate =
        static_cast<double>(accepted.size()) / static_cast<double>(cfg.samples);
    const double rate_ref = std::pow(c / (c + 1.0), static_cast<double>(l));
    const double rate_se =
        std::sqrt(rate * (1.0 - rate) / static_cast<double>(cfg.samples));
    out.push_back(TestReport::two_sided(
        prefix + "/acceptance-rate", rate, rate_ref, rate_se,
        cfg.se_multiplier * rate_se, cfg.seed, cfg.samples));

    beta1c_battery(out, prefix, accepted, cfg);
    maybe_log(log, "psi_given_J_gt_" + fmt(l), std::move(accepted));
  }
  return out;
}

std::vector<TestReport> verify_lemma2(const TestConfig& cfg, SampleLog* log) {
  cfg.validate();
  const double c = cfg.c.value();
  const std::string prefix = "lemma2/c=" + fmt(c);

  std::vector<double> xi(cfg.samples), zeta(cfg.samples);
  std::vector<double> roundtrip(cfg.samples);
  for_each_draw(cfg.samples, cfg.workers, cfg.seed, "lemma2",
                [&](std::size_t i, RngEngine& rng) {
                  const double v =
                      sample_beta(BetaParams(1.0, c + 1.0), rng);
                  const double psi = sample_beta(BetaParams(1.0, c), rng);
                  const auto t = lemma2_transform(v, psi);
                  xi[i] = t.xi;
                  zeta[i] = t.zeta;
                  const auto [v2, psi2] = lemma2_invert(t.xi, t.zeta);
                  roundtrip[i] = std::max(rel_gap(v2, v), rel_gap(psi2, psi));
                });

  std::vector<TestReport> out;
  // xi ~ beta(1, c+1)
  for (int n = 1; n <= cfg.moments_max; ++n)
    out.push_back(moment_report(
        prefix + "/xi/moment/n=" + fmt(std::size_t(n)), xi, n,
        beta_moment(BetaParams(1.0, c + 1.0), n), cfg));
  {
    const std::size_t n = xi.size();
    const double d = ks_statistic(xi, [c](double x) {
      return beta1c_cdf(c + 1.0, x);
    });
    out.push_back(TestReport::one_sided(prefix + "/xi/ks", d,
                                        ks_critical_value(n, cfg.ks_alpha),
                                        cfg.seed, n));
  }
  // zeta ~ beta(1, c)
  for (int n = 1; n <= cfg.moments_max; ++n)
    out.push_back(moment_report(
        prefix + "/zeta/moment/n=" + fmt(std::size_t(n)), zeta, n,
        beta_moment(BetaParams(1.0, c), n), cfg));
  out.push_back(ks_report(prefix + "/zeta/ks", zeta, c, cfg));

  // independence via product moments, bootstrap SEs
  factorization_reports(out, prefix, xi, zeta, cfg, salt_of("lemma2/boot"));

  // round-trip reconstruction, exact up to rounding
  const double worst = *std::max_element(roundtrip.begin(), roundtrip.end());
  out.push_back(TestReport::one_sided(prefix + "/roundtrip", worst, 1e-12,
                                      cfg.seed, cfg.samples));

  maybe_log(log, "xi", std::move(xi));
  maybe_log(log, "zeta", std::move(zeta));
  return out;
}

std::vector<TestReport> verify_theorem3(const TestConfig& cfg,
                                        SampleLog* log) {
  cfg.validate();
  const double c = cfg.c.value();
  const std::size_t max_level =
      *std::max_element(cfg.levels.begin(), cfg.levels.end());

  std::vector<double> wx(cfg.samples);
  std::vector<std::vector<double>> h(cfg.levels.size(),
                                     std::vector<double>(cfg.samples));
  for_each_draw(
      cfg.samples, cfg.workers, cfg.seed, "theorem3",
      [&](std::size_t i, RngEngine& rng) {
        const auto j =
            static_cast<std::size_t>(sample_latent_index(cfg.c, rng));
        auto sticks =
            sample_posterior_sticks(cfg.c, j, cfg.policy, rng, max_level + 1);
        wx[i] = compute_w_x(sticks);
        for (std::size_t k = 0; k < cfg.levels.size(); ++k)
          h[k][i] = compute_h_closed_form(sticks, cfg.levels[k]);
      });

  // independently re-sampled w_x for the constructed-independence check
  std::vector<double> wx_fresh(cfg.samples);
  for_each_draw(cfg.samples, cfg.workers, cfg.seed, "theorem3/fresh",
                [&](std::size_t i, RngEngine& rng) {
                  const auto j = static_cast<std::size_t>(
                      sample_latent_index(cfg.c, rng));
                  auto sticks =
                      sample_posterior_sticks(cfg.c, j, cfg.policy, rng);
                  wx_fresh[i] = compute_w_x(sticks);
                });

  std::vector<TestReport> out;
  for (std::size_t k = 0; k < cfg.levels.size(); ++k) {
    const std::size_t l = cfg.levels[k];
    const std::string prefix = "theorem3/c=" + fmt(c) + "/l=" + fmt(l);

    factorization_reports(out, prefix, h[k], wx, cfg,
                          salt_of("theorem3/boot/" + fmt(l)));

    const double corr = pearson_correlation(h[k], wx_fresh);
    const double corr_se =
        1.0 / std::sqrt(static_cast<double>(cfg.samples));
    out.push_back(TestReport::two_sided(
        prefix + "/shuffled-corr", corr, 0.0, corr_se,
        cfg.se_multiplier * corr_se, cfg.seed, cfg.samples,
        "h_l against an independently re-sampled w_x"));
  }

  maybe_log(log, "w_x", std::move(wx));
  for (std::size_t k = 0; k < cfg.levels.size(); ++k)
    maybe_log(log, "h_l=" + fmt(cfg.levels[k]), std::move(h[k]));
  return out;
}

std::vector<TestReport> verify_theorem4(
    const TestConfig& cfg, std::pair<std::size_t, std::size_t> l_pair,
    SampleLog* log) {
  cfg.validate();
  const auto [l, lp] = l_pair;
  if (!(l > lp) || lp < 1)
    throw std::invalid_argument("theorem4 needs l > l' >= 1");
  const double c = cfg.c.value();
  const std::string prefix =
      "theorem4/c=" + fmt(c) + "/l=" + fmt(l) + "/lp=" + fmt(lp);

  std::vector<double> hl(cfg.samples), hlp(cfg.samples);
  std::vector<std::uint32_t> latent(cfg.samples);
  for_each_draw(
      cfg.samples, cfg.workers, cfg.seed, "theorem4",
      [&](std::size_t i, RngEngine& rng) {
        const auto j =
            static_cast<std::size_t>(sample_latent_index(cfg.c, rng));
        auto sticks =
            sample_posterior_sticks(cfg.c, j, cfg.policy, rng, l + 1);
        latent[i] = static_cast<std::uint32_t>(
            std::min<std::size_t>(j, std::numeric_limits<std::uint32_t>::max()));
        hl[i] = compute_h_closed_form(sticks, l);
        hlp[i] = compute_h_closed_form(sticks, lp);
      });

  std::vector<TestReport> out;
  factorization_reports(out, prefix, hl, hlp, cfg, salt_of("theorem4/boot"));

  // chi-square on equiprobable beta(1,c) bins
  const auto chi = chi_square_independence(
      hl, hlp, [c](double p) { return beta1c_quantile(c, p); }, 10,
      cfg.ks_alpha);
  out.push_back(TestReport::one_sided(
      prefix + "/chi-square", chi.statistic, chi.critical, cfg.seed,
      cfg.samples, "df=" + fmt(chi.df)));

  // restricted to J <= l', both h are distinct raw sticks
  std::vector<double> a, b;
  for (std::size_t i = 0; i < cfg.samples; ++i)
    if (latent[i] <= lp) {
      a.push_back(hl[i]);
      b.push_back(hlp[i]);
    }
  if (a.size() >= kAcceptedFloor) {
    const double corr = pearson_correlation(a, b);
    const double corr_se = 1.0 / std::sqrt(static_cast<double>(a.size()));
    out.push_back(TestReport::two_sided(
        prefix + "/conditional-corr/J<=lp", corr, 0.0, corr_se,
        cfg.se_multiplier * corr_se, cfg.seed, a.size()));
  }

  maybe_log(log, "h_l=" + fmt(l), std::move(hl));
  maybe_log(log, "h_l=" + fmt(lp), std::move(hlp));
  return out;
}

std::vector<TestReport> verify_lemma3(const TestConfig& cfg,
                                      const Partition& part, SampleLog* log) {
  cfg.validate();
  const double c = cfg.c.value();
  const std::size_t k = part.cells();
  const std::string prefix =
      "lemma3/c=" + fmt(c) + "/k=" + fmt(k);

  std::vector<double> alphas(k);
  for (std::size_t i = 0; i < k; ++i)
    alphas[i] = c * part.g_mass(i) + (i == part.cell_of_x ? 1.0 : 0.0);
  const double alpha0 = c + 1.0;

  // posterior-measure route
  std::vector<std::vector<double>> mass(k, std::vector<double>(cfg.samples));
  std::vector<double> mass_err(cfg.samples);
  const auto g = AtomSource::uniform01();
  const Observation obs{part.x};
  for_each_draw(cfg.samples, cfg.workers, cfg.seed, "lemma3",
                [&](std::size_t i, RngEngine& rng) {
                  auto [m, draw] = sample_posterior_measure(
                      cfg.c, obs, g, cfg.policy, rng);
                  (void)draw;
                  double total = 0.0;
                  for (std::size_t cell = 0; cell < k; ++cell) {
                    const auto [lo, hi] = part.cell_bounds(cell);
                    mass[cell][i] = m.mass_in(lo, hi);
                    total += mass[cell][i];
                  }
                  mass_err[i] = std::fabs(total - 1.0);
                });

  // direct Dirichlet route at the same alphas
  std::vector<std::vector<double>> direct(k, std::vector<double>(cfg.samples));
  for_each_draw(cfg.samples, cfg.workers, cfg.seed, "lemma3/direct",
                [&](std::size_t i, RngEngine& rng) {
                  auto v = sample_dirichlet(alphas, rng);
                  for (std::size_t cell = 0; cell < k; ++cell)
                    direct[cell][i] = v[cell];
                });

  std::vector<TestReport> out;
  for (std::size_t i = 0; i < k; ++i) {
    const std::string cell = "/A" + fmt(i + 1);

    const auto s = summarize(mass[i]);
    out.push_back(TestReport::two_sided(
        prefix + "/mean" + cell, s.mean, alphas[i] / alpha0, s.se,
        cfg.se_multiplier * s.se, cfg.seed, s.n));

    const auto v = variance_with_se(mass[i]);
    const double var_ref = alphas[i] * (alpha0 - alphas[i]) /
                           (alpha0 * alpha0 * (alpha0 + 1.0));
    out.push_back(TestReport::two_sided(
        prefix + "/var" + cell, v.value, var_ref, v.se,
        cfg.se_multiplier * v.se, cfg.seed, cfg.samples));

    // two-sample cross-checks against the direct Dirichlet draws
    const auto sd = summarize(direct[i]);
    const double mean_se =
        std::sqrt(s.se * s.se + sd.se * sd.se);
    out.push_back(TestReport::two_sided(
        prefix + "/two-sample/mean" + cell, s.mean, sd.mean, mean_se,
        cfg.se_multiplier * mean_se, cfg.seed, cfg.samples));
    const auto vd = variance_with_se(direct[i]);
    const double var_se = std::sqrt(v.se * v.se + vd.se * vd.se);
    out.push_back(TestReport::two_sided(
        prefix + "/two-sample/var" + cell, v.value, vd.value, var_se,
        cfg.se_multiplier * var_se, cfg.seed, cfg.samples));
  }

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t jj = i + 1; jj < k; ++jj) {
      const auto cv = covariance_with_se(mass[i], mass[jj]);
      const double cov_ref =
          -alphas[i] * alphas[jj] / (alpha0 * alpha0 * (alpha0 + 1.0));
      out.push_back(TestReport::two_sided(
          prefix + "/cov/A" + fmt(i + 1) + "A" + fmt(jj + 1), cv.value,
          cov_ref, cv.se, cfg.se_multiplier * cv.se, cfg.seed,
          cfg.samples));
    }

  const double worst_mass =
      *std::max_element(mass_err.begin(), mass_err.end());
  out.push_back(TestReport::one_sided(prefix + "/mass", worst_mass, 1e-10,
                                      cfg.seed, cfg.samples));

  for (std::size_t i = 0; i < k; ++i)
    maybe_log(log, "P_x_A" + fmt(i + 1), std::move(mass[i]));
  return out;
}

TestReport verify_h_identity(const TestConfig& cfg) {
  cfg.validate();
  const double c = cfg.c.value();

  const std::size_t chunks = (cfg.samples + kChunk - 1) / kChunk;
  std::vector<double> chunk_worst(chunks, 0.0);
  std::vector<std::string> chunk_offender(chunks);

  for_each_draw(
      cfg.samples, cfg.workers, cfg.seed, "h-identity",
      [&](std::size_t i, RngEngine& rng) {
        const auto j =
            static_cast<std::size_t>(sample_latent_index(cfg.c, rng));
        auto sticks = sample_posterior_sticks(cfg.c, j, cfg.policy, rng);
        const double w_x = compute_w_x(sticks);
        const auto q = compute_q(sticks, w_x);
        const auto h = compute_h_from_q(q);

        double worst = 0.0;
        for (std::size_t l = 1; l <= h.size(); ++l)
          worst = std::max(
              worst, rel_gap(h[l - 1], compute_h_closed_form(sticks, l)));

        const std::size_t ci = i / kChunk;
        if (worst > chunk_worst[ci]) {
          chunk_worst[ci] = worst;
          if (worst > 1e-10) {
            // serialize the offending draw for inspection
            std::ostringstream os;
            os.precision(17);
            os << "{\"j\":" << j << ",\"sticks\":[";
            for (std::size_t s = 0; s < sticks.size(); ++s)
              os << (s ? "," : "") << sticks.values()[s];
            os << "]}";
            chunk_offender[ci] = os.str();
          }
        }
      });

  double worst = 0.0;
  std::string offender;
  for (std::size_t ci = 0; ci < chunks; ++ci)
    if (chunk_worst[ci] > worst) {
      worst = chunk_worst[ci];
      offender = chunk_offender[ci];
    }

  return TestReport::one_sided("h-identity/c=" + fmt(c), worst, 1e-10,
                               cfg.seed, cfg.samples, offender);
}

}  // namespace dpsb
