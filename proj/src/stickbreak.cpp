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

#include "dpsb/stickbreak.hpp"

#include <cmath>
#include <stdexcept>

#include "dpsb/detail/generate.hpp"

namespace dpsb {

StickLaw StickLaw::prior(const Concentration& c) {
  return {Kind::kPrior, c.value(), 0};
}

StickLaw StickLaw::posterior(std::size_t j, const Concentration& c) {
  if (j < 1) throw std::invalid_argument("pivot position must be >= 1");
  return {Kind::kPosterior, c.value(), j};
}

BetaParams StickLaw::law_at(std::size_t position) const {
  if (position < 1) throw std::invalid_argument("positions are 1-based");
  if (kind == Kind::kPrior) return BetaParams(1.0, c);
  if (position < j) return BetaParams(1.0, c + 1.0);
  if (position == j) return BetaParams(2.0, c);
  return BetaParams(1.0, c);
}

StickSequence::StickSequence(std::vector<double> values, StickLaw law)
    : values_(std::move(values)), law_(law) {
  if (values_.empty())
    throw std::invalid_argument("stick sequence must be nonempty");
  for (double v : values_)
    if (!(v > 0.0) || !(v < 1.0))
      throw std::invalid_argument("stick values must lie strictly in (0,1)");
}

double StickSequence::value_at(std::size_t position) const {
  if (position < 1 || position > values_.size())
    throw std::out_of_range("stick position " + std::to_string(position) +
                            " outside generated prefix of length " +
                            std::to_string(values_.size()));
  return values_[position - 1];
}

TruncationPolicy::TruncationPolicy(double epsilon_in, std::size_t hard_cap_in)
    : epsilon(epsilon_in), hard_cap(hard_cap_in) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie strictly in (0,1)");
  if (hard_cap < 1) throw std::invalid_argument("hard_cap must be >= 1");
}

AtomSource AtomSource::uniform01() {
  return {[](RngEngine& rng) { return dpsb::uniform01(rng); }, "uniform(0,1)"};
}

DiscreteMeasure::DiscreteMeasure(
    std::vector<double> atoms, std::vector<double> weights,
    std::optional<std::pair<double, double>> tail_atom)
    : atoms_(std::move(atoms)),
      weights_(std::move(weights)),
      tail_atom_(tail_atom) {
  if (atoms_.size() != weights_.size())
    throw std::invalid_argument("atoms and weights must align");
  for (double w : weights_)
    if (!(w >= 0.0))
      throw std::invalid_argument("weights must be nonnegative");
  if (tail_atom_ && !(tail_atom_->second >= 0.0))
    throw std::invalid_argument("tail weight must be nonnegative");
}

double DiscreteMeasure::total_mass() const {
  double total = tail_atom_ ? tail_atom_->second : 0.0;
  for (double w : weights_) total += w;
  return total;
}

double DiscreteMeasure::mass_in(double lo, double hi) const {
  double total = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i] > lo && atoms_[i] <= hi) total += weights_[i];
  if (tail_atom_ && tail_atom_->first > lo && tail_atom_->first <= hi)
    total += tail_atom_->second;
  return total;
}

namespace detail {

StickSequence generate_sticks(const StickLaw& law,
                              const TruncationPolicy& policy, RngEngine& rng,
                              std::size_t min_length) {
  const double log_eps = std::log(policy.epsilon);
  const std::size_t floor_length =
      std::max(min_length,
               law.kind == StickLaw::Kind::kPosterior ? law.j : std::size_t{0});

  std::vector<double> values;
  values.reserve(64);
  double log_tail = 0.0;  // log prod (1 - v_l), kept in log domain so
                          // thousands of terms cannot underflow
  for (std::size_t l = 1; l <= policy.hard_cap; ++l) {
    const double v = sample_beta(law.law_at(l), rng);
    values.push_back(v);
    log_tail += std::log1p(-v);
    if (l >= floor_length && log_tail < log_eps)
      return StickSequence(std::move(values), law);
  }
  throw truncation_overflow(std::exp(log_tail), policy.hard_cap);
}

}  // namespace detail

StickSequence sample_prior_sticks(const Concentration& c,
                                  const TruncationPolicy& policy,
                                  RngEngine& rng, std::size_t min_length) {
  return detail::generate_sticks(StickLaw::prior(c), policy, rng, min_length);
}

WeightSequence sticks_to_weights(const StickSequence& s) {
  std::vector<double> weights(s.size());
  double log_prod = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    weights[i] = s.values()[i] * std::exp(log_prod);
    log_prod += std::log1p(-s.values()[i]);
  }
  return {std::move(weights), std::exp(log_prod)};
}

DiscreteMeasure sample_prior_measure(const Concentration& c,
                                     const AtomSource& g,
                                     const TruncationPolicy& policy,
                                     RngEngine& rng) {
  auto sticks = sample_prior_sticks(c, policy, rng);
  auto w = sticks_to_weights(sticks);
  std::vector<double> atoms(w.weights.size());
  for (double& a : atoms) a = g.sampler(rng);
  // residue goes to one fresh atom, so the measure stays exactly normalized
  // without renormalizing the kept weights
  const auto tail = std::make_pair(g.sampler(rng), w.tail_mass);
  return DiscreteMeasure(std::move(atoms), std::move(w.weights), tail);
}

}  // namespace dpsb
