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
// Command-line front end: run verification suites, dump prior/posterior
// samples, and emit machine-readable reports. Exit status is 0 when every
// verdict passes, 1 when any fails, and 2 on configuration or sampling
// errors.

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpsb/report_io.hpp"
#include "dpsb/verify.hpp"

namespace {

struct Options {
  double c = 1.0;
  std::size_t samples = 1000000;
  std::uint64_t seed = 42;
  double epsilon = 1e-10;
  std::size_t hard_cap = 1000000;
  int moments_max = 5;
  std::vector<std::size_t> levels = {1, 2, 5};
  double se_multiplier = 4.0;
  double ks_alpha = 0.001;
  double x = 0.0;
  std::vector<double> partition;
  unsigned workers = 0;
  std::string format = "json";
  std::string output;
  std::string ecdf_dump;
  std::size_t dump_k = 10;
  std::size_t draws = 1;
};

std::string iso_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

dpsb::TestConfig make_test_config(const Options& o) {
  dpsb::TestConfig cfg;
  cfg.c = dpsb::Concentration(o.c);
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.moments_max = o.moments_max;
  cfg.levels = o.levels;
  cfg.se_multiplier = o.se_multiplier;
  cfg.ks_alpha = o.ks_alpha;
  cfg.policy = dpsb::TruncationPolicy(o.epsilon, o.hard_cap);
  cfg.workers = o.workers;
  cfg.validate();
  return cfg;
}

// The statistical configuration echoed into the report body. Execution
// details (workers, output routing) stay out so identical runs produce
// byte-identical bodies regardless of how they were scheduled.
nlohmann::json config_echo(const Options& o) {
  return {{"c", o.c},
          {"samples", o.samples},
          {"seed", o.seed},
          {"epsilon", o.epsilon},
          {"hard_cap", o.hard_cap},
          {"moments_max", o.moments_max},
          {"levels", o.levels},
          {"se_multiplier", o.se_multiplier},
          {"ks_alpha", o.ks_alpha}};
}

// (l, l') pairs from consecutive sorted levels: {1,2,5} -> (2,1), (5,2).
std::vector<std::pair<std::size_t, std::size_t>> level_pairs(
    std::vector<std::size_t> levels) {
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.size() < 2)
    throw std::invalid_argument(
        "this command needs at least two distinct levels");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 1; i < levels.size(); ++i)
    pairs.emplace_back(levels[i], levels[i - 1]);
  return pairs;
}

int write_text(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(o.output, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << o.output << "\n";
    return 2;
  }
  return 0;
}

int maybe_dump_ecdf(const Options& o, const dpsb::SampleLog& log) {
  if (o.ecdf_dump.empty()) return 0;
  if (log.empty()) {
    std::cerr << "error: this command produces no ECDF sample\n";
    return 2;
  }
  std::ofstream out(o.ecdf_dump, std::ios::binary);
  dpsb::write_ecdf(out, log.front().second);
  if (!out) {
    std::cerr << "error: cannot write " << o.ecdf_dump << "\n";
    return 2;
  }
  return 0;
}

int emit_reports(const Options& o, const std::string& command,
                 nlohmann::json config,
                 const std::vector<dpsb::TestReport>& reports) {
  std::string text;
  if (o.format == "csv") {
    text = dpsb::reports_to_csv(reports);
  } else {
    const nlohmann::json metadata{{"generated_at", iso_now()},
                                  {"tool", "dpsb"},
                                  {"version", "0.1.0"},
                                  {"workers_requested", o.workers}};
    text = dpsb::render_document(
        dpsb::report_body(command, std::move(config), reports), metadata);
  }
  const int rc = write_text(o, text);
  if (rc != 0) return rc;
  return dpsb::all_pass(reports) ? 0 : 1;
}

int run_verify(const std::string& command, const Options& o, bool has_x) {
  const auto cfg = make_test_config(o);
  auto config = config_echo(o);
  dpsb::SampleLog log;
  dpsb::SampleLog* logp = o.ecdf_dump.empty() ? nullptr : &log;

  std::vector<dpsb::TestReport> reports;
  if (command == "verify-theorem1") {
    reports = dpsb::verify_theorem1(cfg, logp);
  } else if (command == "verify-theorem2") {
    reports = dpsb::verify_theorem2(cfg, logp);
  } else if (command == "verify-lemma1") {
    reports = dpsb::verify_lemma1(cfg, logp);
  } else if (command == "verify-lemma2") {
    reports = dpsb::verify_lemma2(cfg, logp);
  } else if (command == "verify-theorem3") {
    reports = dpsb::verify_theorem3(cfg, logp);
  } else if (command == "verify-theorem4") {
    for (const auto& pair : level_pairs(o.levels)) {
      auto part = dpsb::verify_theorem4(cfg, pair, logp);
      reports.insert(reports.end(), part.begin(), part.end());
    }
  } else if (command == "verify-lemma3") {
    const std::vector<double> bounds =
        o.partition.empty() ? std::vector<double>{0.5} : o.partition;
    dpsb::Partition part(bounds, o.x);
    config["x"] = o.x;
    config["partition"] = bounds;
    reports = dpsb::verify_lemma3(cfg, part, logp);
  } else if (command == "verify-h-identity") {
    reports = {dpsb::verify_h_identity(cfg)};
  } else if (command == "verify-all") {
    const double x = has_x ? o.x : 0.25;
    const std::vector<double> bounds =
        o.partition.empty() ? std::vector<double>{0.5} : o.partition;
    config["x"] = x;
    config["partition"] = bounds;

    auto append = [&reports](std::vector<dpsb::TestReport> part) {
      reports.insert(reports.end(), std::make_move_iterator(part.begin()),
                     std::make_move_iterator(part.end()));
    };
    append(dpsb::verify_theorem1(cfg, logp));
    append(dpsb::verify_theorem2(cfg));
    append(dpsb::verify_lemma1(cfg));
    append(dpsb::verify_lemma2(cfg));
    append(dpsb::verify_theorem3(cfg));
    for (const auto& pair : level_pairs(o.levels))
      append(dpsb::verify_theorem4(cfg, pair));
    append(dpsb::verify_lemma3(cfg, dpsb::Partition(bounds, x)));
    reports.push_back(dpsb::verify_h_identity(cfg));
  } else {
    std::cerr << "error: unknown command " << command << "\n";
    return 2;
  }

  const int rc = maybe_dump_ecdf(o, log);
  if (rc != 0) return rc;
  return emit_reports(o, command, std::move(config), reports);
}

int run_sample_prior(const Options& o) {
  const dpsb::Concentration c(o.c);
  const dpsb::TruncationPolicy policy(o.epsilon, o.hard_cap);
  auto rng = dpsb::make_stream(o.seed, dpsb::salt_of("sample-prior"), 0);
  const auto measure = dpsb::sample_prior_measure(
      c, dpsb::AtomSource::uniform01(), policy, rng);

  if (o.format == "csv") return write_text(o, dpsb::measure_to_csv(measure));
  nlohmann::json body{{"command", "sample-prior"},
                      {"config", config_echo(o)},
                      {"measures", {dpsb::measure_to_json(measure)}}};
  const nlohmann::json metadata{{"generated_at", iso_now()},
                                {"tool", "dpsb"},
                                {"version", "0.1.0"}};
  return write_text(o, dpsb::render_document(body, metadata));
}

int run_sample_posterior(const Options& o) {
  const dpsb::Concentration c(o.c);
  const dpsb::TruncationPolicy policy(o.epsilon, o.hard_cap);
  const dpsb::Observation obs{o.x};
  const auto g = dpsb::AtomSource::uniform01();
  auto rng = dpsb::make_stream(o.seed, dpsb::salt_of("sample-posterior"), 0);

  nlohmann::json measures = nlohmann::json::array();
  nlohmann::json draws = nlohmann::json::array();
  std::string csv = dpsb::posterior_draws_csv_header(o.dump_k);
  for (std::size_t d = 0; d < std::max<std::size_t>(o.draws, 1); ++d) {
    auto [measure, draw] =
        dpsb::sample_posterior_measure(c, obs, g, policy, rng);
    if (o.format == "csv") {
      csv += dpsb::posterior_draw_to_csv_row(draw, o.dump_k);
    } else {
      measures.push_back(dpsb::measure_to_json(measure));
      draws.push_back(dpsb::posterior_draw_to_json(draw, o.dump_k));
    }
  }

  if (o.format == "csv") return write_text(o, csv);
  auto config = config_echo(o);
  config["x"] = o.x;
  nlohmann::json body{{"command", "sample-posterior"},
                      {"config", std::move(config)},
                      {"measures", std::move(measures)},
                      {"draws", std::move(draws)}};
  const nlohmann::json metadata{{"generated_at", iso_now()},
                                {"tool", "dpsb"},
                                {"version", "0.1.0"}};
  return write_text(o, dpsb::render_document(body, metadata));
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"stick-breaking construction and exact one-observation "
               "posterior of the Dirichlet process, with statistical "
               "verification of its distributional laws"};
  app.fallthrough();
  app.set_config("--config", "", "read defaults from an INI/TOML file "
                                 "(command-line flags win)");

  app.add_option("--c", o.c, "concentration parameter (> 0)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--samples", o.samples, "Monte Carlo sample count")
      ->capture_default_str();
  app.add_option("--seed", o.seed, "master random seed")
      ->envname("DPSB_SEED")
      ->capture_default_str();
  app.add_option("--epsilon", o.epsilon,
                 "stick truncation threshold on remaining mass")
      ->check(CLI::Range(1e-300, 0.999999))
      ->capture_default_str();
  app.add_option("--hard-cap", o.hard_cap, "maximum sticks per draw")
      ->capture_default_str();
  app.add_option("--moments-max", o.moments_max, "largest moment order tested")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--levels", o.levels, "stick levels l under test")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--se-multiplier", o.se_multiplier,
                 "pass window in standard errors")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--ks-alpha", o.ks_alpha,
                 "significance level for KS and chi-square tests")
      ->check(CLI::Range(1e-12, 0.5))
      ->capture_default_str();
  auto* opt_x =
      app.add_option("--x", o.x, "observation in (0,1); required by "
                                 "sample-posterior and verify-lemma3")
          ->check(CLI::Range(1e-12, 1.0 - 1e-12));
  app.add_option("--partition", o.partition,
                 "partition boundaries inside (0,1)")
      ->delimiter(',');
  app.add_option("--workers", o.workers,
                 "worker threads (0 = available parallelism)")
      ->capture_default_str();
  app.add_option("--format", o.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--output", o.output, "write the report here (default stdout)");
  app.add_option("--ecdf-dump", o.ecdf_dump,
                 "write the suite's primary sample as (value, ECDF) rows");
  app.add_option("--dump-k", o.dump_k,
                 "sticks/q/h positions kept in sample dumps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--draws", o.draws, "posterior draws to dump")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  static const char* kCommands[] = {
      "verify-all",      "verify-theorem1", "verify-theorem2",
      "verify-theorem3", "verify-theorem4", "verify-lemma1",
      "verify-lemma2",   "verify-lemma3",   "verify-h-identity",
      "sample-prior",    "sample-posterior"};
  for (const char* name : kCommands) app.add_subcommand(name);
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit cleanly, errors are 2
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const bool has_x = opt_x->count() > 0;

  try {
    if (command == "sample-prior") return run_sample_prior(o);
    if (command == "sample-posterior" || command == "verify-lemma3") {
      if (!has_x) {
        std::cerr << "error: " << command << " requires --x\n";
        return 2;
      }
    }
    if (command == "sample-posterior") return run_sample_posterior(o);
    return run_verify(command, o, has_x);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
