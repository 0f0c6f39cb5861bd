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

#include "dpsb/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

namespace dpsb {

namespace {

// Shortest round-trip decimal form; keeps CSV and ECDF output identical
// across runs.
std::string num(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

template <typename T>
nlohmann::json head_of(const std::vector<T>& xs, std::size_t k) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < std::min(k, xs.size()); ++i) arr.push_back(xs[i]);
  return arr;
}

}  // namespace

nlohmann::json report_to_json(const TestReport& r) {
  return {{"name", r.name},
          {"statistic", r.statistic},
          {"reference", r.reference},
          {"standard_error", r.standard_error},
          {"threshold", r.threshold},
          {"verdict", r.pass ? "pass" : "fail"},
          {"seed", r.seed},
          {"samples_used", r.samples_used},
          {"note", r.note}};
}

nlohmann::json report_body(const std::string& command,
                           const nlohmann::json& config,
                           const std::vector<TestReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return {{"command", command},
          {"config", config},
          {"reports", arr},
          {"all_pass", all_pass(reports)}};
}

std::string render_document(const nlohmann::json& body,
                            const nlohmann::json& metadata) {
  const nlohmann::json doc{{"body", body}, {"metadata", metadata}};
  return doc.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<TestReport>& reports) {
  std::string out =
      "name,statistic,reference,standard_error,threshold,verdict,seed,"
      "samples_used,note\n";
  for (const auto& r : reports) {
    out += csv_escape(r.name) + ',' + num(r.statistic) + ',' +
           num(r.reference) + ',' + num(r.standard_error) + ',' +
           num(r.threshold) + ',' + (r.pass ? "pass" : "fail") + ',' +
           std::to_string(r.seed) + ',' + std::to_string(r.samples_used) +
           ',' + csv_escape(r.note) + '\n';
  }
  return out;
}

nlohmann::json measure_to_json(const DiscreteMeasure& m) {
  nlohmann::json j{{"atoms", m.atoms()}, {"weights", m.weights()}};
  if (m.tail_atom())
    j["tail"] = {{"atom", m.tail_atom()->first},
                 {"weight", m.tail_atom()->second}};
  else
    j["tail"] = nullptr;
  return j;
}

std::string measure_to_csv(const DiscreteMeasure& m) {
  std::string out = "kind,atom,weight\n";
  for (std::size_t i = 0; i < m.atoms().size(); ++i)
    out += "atom," + num(m.atoms()[i]) + ',' + num(m.weights()[i]) + '\n';
  if (m.tail_atom())
    out += "tail," + num(m.tail_atom()->first) + ',' +
           num(m.tail_atom()->second) + '\n';
  return out;
}

nlohmann::json posterior_draw_to_json(const PosteriorDraw& draw,
                                      std::size_t k) {
  return {{"j", draw.j},
          {"w_x", draw.w_x},
          {"sticks", head_of(draw.sticks.values(), k)},
          {"q", head_of(draw.q, k)},
          {"h", head_of(draw.h, k)}};
}

std::string posterior_draws_csv_header(std::size_t k) {
  std::string out = "j,w_x";
  for (auto [prefix, count] :
       {std::pair<const char*, std::size_t>{"v", k}, {"q", k}, {"h", k}})
    for (std::size_t i = 1; i <= count; ++i)
      out += ',' + std::string(prefix) + std::to_string(i);
  return out + '\n';
}

std::string posterior_draw_to_csv_row(const PosteriorDraw& draw,
                                      std::size_t k) {
  std::string out = std::to_string(draw.j) + ',' + num(draw.w_x);
  auto emit = [&](const std::vector<double>& xs) {
    for (std::size_t i = 0; i < k; ++i)
      out += ',' + (i < xs.size() ? num(xs[i]) : std::string());
  };
  emit(draw.sticks.values());
  emit(draw.q);
  emit(draw.h);
  return out + '\n';
}

void write_ecdf(std::ostream& out, std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  const auto n = static_cast<double>(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i)
    out << num(sample[i]) << ' ' << num((static_cast<double>(i) + 1.0) / n)
        << '\n';
}

}  // namespace dpsb
