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
// Serialization of reports, measures and posterior draws. JSON is the
// canonical format; CSV is a lossy tabular projection. Report bodies are
// deterministic: identical inputs serialize to identical bytes, and
// anything time- or host-dependent lives in the separate metadata object.

#ifndef DPSB_REPORT_IO_HPP_
#define DPSB_REPORT_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpsb/posterior.hpp"
#include "dpsb/verify.hpp"

namespace dpsb {

nlohmann::json report_to_json(const TestReport& report);

// The deterministic report body: command, the statistical configuration,
// the report list, and the conjunction of verdicts.
nlohmann::json report_body(const std::string& command,
                           const nlohmann::json& config,
                           const std::vector<TestReport>& reports);

// Full document: {"body": ..., "metadata": ...}, pretty-printed.
std::string render_document(const nlohmann::json& body,
                            const nlohmann::json& metadata);

// Header row plus one row per report.
std::string reports_to_csv(const std::vector<TestReport>& reports);

nlohmann::json measure_to_json(const DiscreteMeasure& m);

// Rows of (kind, atom, weight) with kind in {atom, tail}.
std::string measure_to_csv(const DiscreteMeasure& m);

// Flat record (j, w_x, first k sticks / q / h).
nlohmann::json posterior_draw_to_json(const PosteriorDraw& draw,
                                      std::size_t k);

std::string posterior_draws_csv_header(std::size_t k);
std::string posterior_draw_to_csv_row(const PosteriorDraw& draw,
                                      std::size_t k);

// Two-column (value, empirical CDF) records, ascending in value.
void write_ecdf(std::ostream& out, std::vector<double> sample);

}  // namespace dpsb

#endif  // DPSB_REPORT_IO_HPP_
