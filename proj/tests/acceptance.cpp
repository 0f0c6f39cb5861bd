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
// Acceptance suite: one criterion per line, fixed seeds, pinned
// tolerances. Exit status is the number of failed criteria (0 = green).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "dpsb/report_io.hpp"
#include "dpsb/verify.hpp"

using namespace dpsb;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

bool collect(const std::vector<TestReport>& reports, std::string& failures,
             std::size_t* count = nullptr) {
  bool ok = true;
  std::size_t shown = 0;
  for (const auto& r : reports) {
    if (!r.pass) {
      ok = false;
      if (shown++ < 4) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "\n      FAIL %s stat=%.6g ref=%.6g thr=%.3g",
                      r.name.c_str(), r.statistic, r.reference, r.threshold);
        failures += buf;
      }
    }
  }
  if (count) *count += reports.size();
  return ok;
}

TestConfig base_config(double c, std::size_t samples, std::uint64_t seed) {
  TestConfig cfg;
  cfg.c = Concentration(c);
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

// 1. ratio-form vs closed-form h: exact to 1e-10 over 1e4 draws per c,
//    under 10 seconds total.
Outcome criterion1() {
  const auto start = Clock::now();
  double worst = 0.0;
  std::string failures;
  bool ok = true;
  for (double c : {0.5, 1.0, 5.0}) {
    auto report = verify_h_identity(base_config(c, 10000, 1101));
    worst = std::max(worst, report.statistic);
    ok &= collect({report}, failures);
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) {
    ok = false;
    failures += "\n      FAIL runtime " + std::to_string(elapsed) + " s >= 10 s";
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max rel discrepancy %.2e (< 1e-10), %.1f s", worst, elapsed);
  return {ok, buf + failures};
}

// 2. w_x marginal: moments n=1..5 within 4 SE and KS at alpha=0.001 for
//    c in {0.5, 1, 2, 5}, 1e6 draws, under 60 s per c.
Outcome criterion2() {
  bool ok = true;
  std::string failures;
  std::size_t reports = 0;
  double slowest = 0.0;
  for (double c : {0.5, 1.0, 2.0, 5.0}) {
    const auto start = Clock::now();
    ok &= collect(verify_theorem1(base_config(c, 1000000, 1202)), failures,
                  &reports);
    const double elapsed = seconds_since(start);
    slowest = std::max(slowest, elapsed);
    if (elapsed >= 60.0) {
      ok = false;
      failures += "\n      FAIL runtime at c=" + std::to_string(c) + ": " +
                  std::to_string(elapsed) + " s >= 60 s";
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu reports, slowest c took %.1f s",
                reports, slowest);
  return {ok, buf + failures};
}

// 3. h_l marginals at l in {1,2,5}: moments, KS, survival split checks.
Outcome criterion3() {
  bool ok = true;
  std::string failures;
  std::size_t reports = 0;
  for (double c : {0.5, 1.0, 2.0, 5.0})
    ok &= collect(verify_theorem2(base_config(c, 1000000, 1303)), failures,
                  &reports);
  return {ok, std::to_string(reports) + " reports" + failures};
}

// 4. psi_{J,l} | J > l: beta(1,c) moments and KS, acceptance rate within
//    4 SE of (c/(c+1))^l.
Outcome criterion4() {
  bool ok = true;
  std::string failures;
  std::size_t reports = 0;
  for (double c : {0.5, 1.0, 2.0, 5.0})
    ok &= collect(verify_lemma1(base_config(c, 1000000, 1404)), failures,
                  &reports);
  return {ok, std::to_string(reports) + " reports" + failures};
}

// 5. xi/zeta marginals, product-moment factorization, round-trip 1e-12.
Outcome criterion5() {
  bool ok = true;
  std::string failures;
  std::size_t reports = 0;
  ok &= collect(verify_lemma2(base_config(1.0, 1000000, 1505)), failures,
                &reports);
  return {ok, std::to_string(reports) + " reports" + failures};
}

// 6. h_l vs w_x and h_l vs h_{l'} independence: factorization within
//    4 bootstrap SE, chi-square below the alpha=0.001 critical value.
Outcome criterion6() {
  bool ok = true;
  std::string failures;
  std::size_t reports = 0;
  auto cfg = base_config(1.0, 1000000, 1606);
  ok &= collect(verify_theorem3(cfg), failures, &reports);
  for (auto pair : {std::pair<std::size_t, std::size_t>{2, 1}, {5, 2}})
    ok &= collect(verify_theorem4(cfg, pair), failures, &reports);
  return {ok, std::to_string(reports) + " reports" + failures};
}

// 7. finite-partition Dirichlet identity at c in {1,2}, 2- and 3-cell
//    partitions, x = 0.25, 1e5 measures, under 120 s total.
Outcome criterion7() {
  const auto start = Clock::now();
  bool ok = true;
  std::string failures;
  std::size_t reports = 0;
  for (double c : {1.0, 2.0}) {
    auto cfg = base_config(c, 100000, 1707);
    ok &= collect(verify_lemma3(cfg, Partition({0.5}, 0.25)), failures,
                  &reports);
    ok &= collect(
        verify_lemma3(cfg, Partition({1.0 / 3.0, 2.0 / 3.0}, 0.25)),
        failures, &reports);
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 120.0) {
    ok = false;
    failures += "\n      FAIL runtime " + std::to_string(elapsed) + " s >= 120 s";
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu reports, %.1f s", reports, elapsed);
  return {ok, buf + failures};
}

// 8. oracle self-consistency: E(psi^n) at j = l+1 equals the beta(2,c)
//    moment to 1e-12 relative.
Outcome criterion8() {
  double worst = 0.0;
  for (double c : {0.5, 1.0, 2.0, 5.0})
    for (int n = 1; n <= 5; ++n) {
      const double lhs = oracle_psi_moment(Concentration(c), 5, 4, n);
      const double rhs = beta_moment(BetaParams(2.0, c), n);
      worst = std::max(worst, std::fabs(lhs - rhs) / rhs);
    }
  char buf[120];
  std::snprintf(buf, sizeof buf, "max rel gap %.2e (< 1e-12)", worst);
  return {worst < 1e-12, buf};
}

// 9. byte-identical report bodies across reruns and worker counts.
Outcome criterion9() {
  const nlohmann::json config{{"c", 1.0}, {"samples", 100000}, {"seed", 1909}};
  auto body_of = [&](const std::string& command,
                     const std::vector<TestReport>& reports) {
    return report_body(command, config, reports).dump(2);
  };

  bool ok = true;
  std::string failures;
  auto check_suite = [&](const char* name, auto&& run) {
    auto one = run(1u);
    auto again = run(1u);
    auto four = run(4u);
    if (body_of(name, one) != body_of(name, again)) {
      ok = false;
      failures += std::string("\n      FAIL rerun of ") + name + " differs";
    }
    if (body_of(name, one) != body_of(name, four)) {
      ok = false;
      failures += std::string("\n      FAIL ") + name +
                  " differs between 1 and 4 workers";
    }
  };

  check_suite("verify-theorem1", [&](unsigned workers) {
    auto cfg = base_config(1.0, 100000, 1909);
    cfg.workers = workers;
    return verify_theorem1(cfg);
  });
  check_suite("verify-lemma2", [&](unsigned workers) {
    auto cfg = base_config(1.0, 100000, 1909);
    cfg.workers = workers;
    return verify_lemma2(cfg);
  });
  check_suite("verify-lemma3", [&](unsigned workers) {
    auto cfg = base_config(1.0, 20000, 1909);
    cfg.workers = workers;
    return verify_lemma3(cfg, Partition({0.5}, 0.25));
  });
  check_suite("verify-h-identity", [&](unsigned workers) {
    auto cfg = base_config(1.0, 20000, 1909);
    cfg.workers = workers;
    return std::vector<TestReport>{verify_h_identity(cfg)};
  });

  return {ok, ok ? "4 suites byte-identical across reruns and worker counts"
                 : "mismatch" + failures};
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    Outcome (*run)();
  };
  const Entry entries[] = {
      {"h-identity exact agreement", criterion1},
      {"w_x marginal law (moments + KS)", criterion2},
      {"h_l marginal law and survival split", criterion3},
      {"conditional psi law under rejection", criterion4},
      {"xi/zeta transform laws and independence", criterion5},
      {"h_l/w_x and h_l/h_l' independence", criterion6},
      {"finite-partition Dirichlet identity", criterion7},
      {"oracle self-consistency", criterion8},
      {"determinism across workers", criterion9},
  };

  int failed = 0;
  const auto start = Clock::now();
  for (std::size_t i = 0; i < std::size(entries); ++i) {
    const auto outcome = entries[i].run();
    if (!outcome.pass) ++failed;
    std::printf("[%s] criterion %zu: %s — %s\n",
                outcome.pass ? "PASS" : "FAIL", i + 1, entries[i].label,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("ACCEPTANCE: %zu/%zu criteria passed in %.1f s\n",
              std::size(entries) - failed, std::size(entries),
              seconds_since(start));
  return failed;
}
