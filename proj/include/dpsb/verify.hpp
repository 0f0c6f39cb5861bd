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
// Monte Carlo and exact verification of the posterior distributional
// laws: the marginal law of w_x, the marginal stick laws recovered from
// the q-weights, the independence results, and the Dirichlet identity of
// the posterior over finite partitions. Closed-form moment oracles serve
// as references; failures are verdicts, never exceptions.
//
// Every suite is reproducible bit-for-bit given (seed, samples, c),
// independent of worker count: draws are generated in fixed 8192-draw
// chunks with streams derived from (seed, suite, chunk), and all
// reductions run sequentially afterward.

#ifndef DPSB_VERIFY_HPP_
#define DPSB_VERIFY_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dpsb/posterior.hpp"

namespace dpsb {

struct TestConfig {
  Concentration c{1.0};
  std::size_t samples = 1000000;
  std::uint64_t seed = 42;
  int moments_max = 5;
  std::vector<std::size_t> levels = {1, 2, 5};
  double se_multiplier = 4.0;
  double ks_alpha = 0.001;
  TruncationPolicy policy{};
  unsigned workers = 0;  // 0 = available parallelism; never affects results

  // Throws std::invalid_argument unless samples >= 1000, moments_max >= 1,
  // all levels >= 1, and the thresholds are in range.
  void validate() const;
};

struct TestReport {
  std::string name;
  double statistic = 0;
  double reference = 0;
  double standard_error = 0;
  double threshold = 0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::size_t samples_used = 0;
  std::string note;

  // pass iff |statistic - reference| <= threshold.
  static TestReport two_sided(std::string name, double statistic,
                              double reference, double standard_error,
                              double threshold, std::uint64_t seed,
                              std::size_t samples_used, std::string note = "");

  // pass iff statistic <= threshold (KS / chi-square / max-discrepancy).
  static TestReport one_sided(std::string name, double statistic,
                              double threshold, std::uint64_t seed,
                              std::size_t samples_used, std::string note = "");
};

inline bool all_pass(const std::vector<TestReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

// A finite partition of (0,1) into k >= 2 cells (b_{i-1}, b_i], with the
// cell containing the observation recorded. The base measure is
// uniform(0,1), so each cell's G-mass is its width.
struct Partition {
  Partition(std::vector<double> boundaries_in, double x_in);

  std::vector<double> boundaries;  // strictly increasing, inside (0,1)
  double x;
  std::size_t cell_of_x;  // 0-based

  std::size_t cells() const noexcept { return boundaries.size() + 1; }
  // (lo, hi] bounds of a 0-based cell.
  std::pair<double, double> cell_bounds(std::size_t i) const;
  double g_mass(std::size_t i) const;
  std::size_t cell_of(double value) const;
};

// Named samples a suite can optionally hand back for ECDF dumps.
using SampleLog = std::vector<std::pair<std::string, std::vector<double>>>;

// E(psi_{j,l}^n) = Gamma(2+c)Gamma(n+2)/Gamma(n+2+c) *
// ((c+1)/(c+1+n))^{j-l-1}, for l < j; log-gamma arithmetic.
double oracle_psi_moment(const Concentration& c, std::size_t j, std::size_t l,
                         int n);

// Marginal law of w_x: moments n = 1..moments_max against beta(1,c) plus
// a KS test of the whole sample.
std::vector<TestReport> verify_theorem1(const TestConfig& cfg,
                                        SampleLog* log = nullptr);

// Marginal law of h_l at each requested level: moments, KS, the marginal
// survival check at y in {0.1, 0.5, 0.9}, and the split
// P(h_l >= y, J <= l) = (1-y)^c (1 - (c/(1+c))^l).
std::vector<TestReport> verify_theorem2(const TestConfig& cfg,
                                        SampleLog* log = nullptr);

// Conditional law of psi_{J,l} given J > l by rejection: acceptance rate,
// moments, and KS against beta(1,c). Throws undersampling_error if fewer
// than 1000 draws are accepted at some level.
std::vector<TestReport> verify_lemma1(const TestConfig& cfg,
                                      SampleLog* log = nullptr);

// The (v, psi) -> (xi, zeta) transform: marginals of xi and zeta, product
// -moment factorization, and the round-trip reconstruction bound.
std::vector<TestReport> verify_lemma2(const TestConfig& cfg,
                                      SampleLog* log = nullptr);

// Factorization E(h_l^n w_x^m) = E(h_l^n) E(w_x^m) for (n,m) in {1,2}^2
// at each level, with bootstrap SEs, plus a shuffled-pairs sanity check.
std::vector<TestReport> verify_theorem3(const TestConfig& cfg,
                                        SampleLog* log = nullptr);

// Pairwise independence of h_l and h_{l'} for l > l': product moments,
// a 10x10 equiprobable-bin chi-square, and the conditional correlation
// restricted to draws with J <= l'.
std::vector<TestReport> verify_theorem4(
    const TestConfig& cfg, std::pair<std::size_t, std::size_t> l_pair,
    SampleLog* log = nullptr);

// Finite-partition Dirichlet identity of the posterior measure: means,
// variances and covariances of (P_x(A_i)) against Dirichlet(c G(A_i) +
// 1{i = cell_of_x}), plus a two-sample cross-check against direct
// Dirichlet draws at the same alphas.
std::vector<TestReport> verify_lemma3(const TestConfig& cfg,
                                      const Partition& part,
                                      SampleLog* log = nullptr);

// Deterministic agreement of the ratio-form and closed-form h over
// `samples` posterior draws; reports the maximum relative discrepancy.
TestReport verify_h_identity(const TestConfig& cfg);

}  // namespace dpsb

#endif  // DPSB_VERIFY_HPP_
