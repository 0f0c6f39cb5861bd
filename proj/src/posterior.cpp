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

#include "dpsb/posterior.hpp"

#include <cmath>
#include <stdexcept>

#include "dpsb/detail/generate.hpp"

namespace dpsb {

namespace {

// Remainder floor for the h recursion: a partial q-sum within 1e-14 of one
// means the ratio is no longer meaningful, so the list truncates there.
constexpr double kRemainderFloor = 1e-14;

const StickLaw& require_posterior(const StickSequence& s) {
  if (s.law().kind != StickLaw::Kind::kPosterior)
    throw std::invalid_argument("operation requires posterior-tagged sticks");
  return s.law();
}

void require_length(const StickSequence& s, std::size_t needed) {
  if (s.size() < needed)
    throw std::out_of_range("stick sequence of length " +
                            std::to_string(s.size()) + " too short, need " +
                            std::to_string(needed));
}

void require_open_unit(double value, const char* name) {
  if (!(value > 0.0) || !(value < 1.0))
    throw std::invalid_argument(std::string(name) +
                                " must lie strictly in (0,1)");
}

}  // namespace

StickSequence sample_posterior_sticks(const Concentration& c, std::size_t j,
                                      const TruncationPolicy& policy,
                                      RngEngine& rng, std::size_t min_length) {
  return detail::generate_sticks(StickLaw::posterior(j, c), policy, rng,
                                 min_length);
}

double compute_w_x(const StickSequence& s) {
  const StickLaw& law = require_posterior(s);
  require_length(s, law.j);
  double log_prod = 0.0;
  for (std::size_t l = 1; l < law.j; ++l)
    log_prod += std::log1p(-s.value_at(l));
  return s.value_at(law.j) * std::exp(log_prod);
}

std::vector<double> compute_q(const StickSequence& s, double w_x) {
  const StickLaw& law = require_posterior(s);
  require_length(s, law.j);
  const double w_ref = compute_w_x(s);
  if (std::fabs(w_x - w_ref) > 1e-9 * w_ref)
    throw std::invalid_argument("w_x does not match the stick sequence");
  if (1.0 - w_x < 1e-12) throw degenerate_posterior(w_x);

  const auto w = sticks_to_weights(s);
  const std::size_t count = s.size() - 1;  // position j is deleted
  std::vector<double> q(count);
  for (std::size_t l = 1; l <= count; ++l)
    q[l - 1] = (l < law.j ? w.weights[l - 1] : w.weights[l]) / (1.0 - w_x);
  return q;
}

std::vector<double> compute_h_from_q(const std::vector<double>& q) {
  std::vector<double> h;
  h.reserve(q.size());
  double log_rem = 0.0;  // log(1 - q_1 - ... - q_{l-1}) as log prod (1 - h_r)
  for (double ql : q) {
    const double rem = std::exp(log_rem);
    if (rem < kRemainderFloor) break;
    const double hl = ql / rem;
    if (!(hl > 0.0)) throw std::invalid_argument("q entries must be positive");
    if (hl >= 1.0) break;  // remainder exhausted by rounding
    h.push_back(hl);
    log_rem += std::log1p(-hl);
  }
  return h;
}

double compute_psi(const StickSequence& s, std::size_t l) {
  const StickLaw& law = require_posterior(s);
  if (l < 1 || l >= law.j)
    throw std::invalid_argument("compute_psi needs 1 <= l < j");
  require_length(s, law.j);
  double log_prod = 0.0;
  for (std::size_t r = l + 1; r < law.j; ++r)
    log_prod += std::log1p(-s.value_at(r));
  return s.value_at(law.j) * std::exp(log_prod);
}

double compute_h_closed_form(const StickSequence& s, std::size_t l) {
  const StickLaw& law = require_posterior(s);
  if (l < 1) throw std::invalid_argument("positions are 1-based");
  if (l >= law.j) {
    require_length(s, l + 1);
    return s.value_at(l + 1);
  }
  const double psi = compute_psi(s, l);
  const double v = s.value_at(l);
  return v / (1.0 - psi * (1.0 - v));
}

TransformBundle lemma2_transform(double v, double psi) {
  require_open_unit(v, "v");
  require_open_unit(psi, "psi");
  const double xi = psi * (1.0 - v);
  const double zeta = v / (1.0 - xi);  // 1 - xi > v > 0
  return {v, psi, xi, zeta, std::nullopt};
}

std::pair<double, double> lemma2_invert(double xi, double zeta) {
  require_open_unit(xi, "xi");
  require_open_unit(zeta, "zeta");
  const double v = zeta * (1.0 - xi);
  const double psi = xi / (1.0 - v);
  return {v, psi};
}

std::pair<DiscreteMeasure, PosteriorDraw> sample_posterior_measure(
    const Concentration& c, const Observation& x, const AtomSource& g,
    const TruncationPolicy& policy, RngEngine& rng, std::size_t min_length) {
  const auto j = static_cast<std::size_t>(sample_latent_index(c, rng));
  auto sticks = sample_posterior_sticks(c, j, policy, rng, min_length);
  const double w_x = compute_w_x(sticks);
  auto q = compute_q(sticks, w_x);
  auto h = compute_h_from_q(q);
  const double tail_mass = sticks_to_weights(sticks).tail_mass;

  // atom 0 is the observation; it is never merged with a G-atom by value
  std::vector<double> atoms(q.size() + 1);
  std::vector<double> weights(q.size() + 1);
  atoms[0] = x.x;
  weights[0] = w_x;
  for (std::size_t i = 0; i < q.size(); ++i) {
    atoms[i + 1] = g.sampler(rng);
    weights[i + 1] = (1.0 - w_x) * q[i];
  }
  const auto tail = std::make_pair(g.sampler(rng), tail_mass);

  PosteriorDraw draw{j,            std::move(sticks), w_x,
                     std::move(q), std::move(h),      std::nullopt,
                     std::nullopt};
  return {DiscreteMeasure(std::move(atoms), std::move(weights), tail),
          std::move(draw)};
}

}  // namespace dpsb
