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
// Stick-breaking sampler for the prior process: stick variables, their
// weight sequence, atoms from a base measure, and epsilon truncation.
//
// Positions are 1-based throughout, matching the weight recursion
// w_j = v_j * prod_{l<j} (1 - v_l).

#ifndef DPSB_STICKBREAK_HPP_
#define DPSB_STICKBREAK_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpsb/distmath.hpp"
#include "dpsb/errors.hpp"

namespace dpsb {

// Which beta law generated each stick position. Under the prior every
// position is beta(1, c); under the posterior with pivot j, position
// l < j is beta(1, c+1), l == j is beta(2, c), l > j is beta(1, c).
struct StickLaw {
  enum class Kind { kPrior, kPosterior };

  Kind kind;
  double c;
  std::size_t j;  // pivot position; 0 under the prior

  static StickLaw prior(const Concentration& c);
  static StickLaw posterior(std::size_t j, const Concentration& c);

  // Beta parameters at a 1-based position.
  BetaParams law_at(std::size_t position) const;
};

// A finite prefix of stick variables, each strictly inside (0,1),
// together with the law tag that generated it.
class StickSequence {
 public:
  StickSequence(std::vector<double> values, StickLaw law);

  std::size_t size() const noexcept { return values_.size(); }
  // 1-based access; throws std::out_of_range past the prefix.
  double value_at(std::size_t position) const;
  const std::vector<double>& values() const noexcept { return values_; }
  const StickLaw& law() const noexcept { return law_; }

 private:
  std::vector<double> values_;
  StickLaw law_;
};

// Stop once the undistributed stick mass drops below epsilon, or fail
// with truncation_overflow at hard_cap.
struct TruncationPolicy {
  explicit TruncationPolicy(double epsilon_in = 1e-10,
                            std::size_t hard_cap_in = 1000000);
  double epsilon;
  std::size_t hard_cap;
};

// i.i.d. atom generator for the base distribution G. G is treated as
// atomless: atoms are identified by generation slot, never by value.
struct AtomSource {
  std::function<double(RngEngine&)> sampler;
  std::string descriptor;

  static AtomSource uniform01();
};

// Stick weights plus the undistributed tail mass; together they sum to one.
struct WeightSequence {
  std::vector<double> weights;
  double tail_mass;
};

// Atoms with aligned weights and an optional tail atom absorbing the
// truncation residue, so total mass is exactly one up to rounding.
class DiscreteMeasure {
 public:
  DiscreteMeasure(std::vector<double> atoms, std::vector<double> weights,
                  std::optional<std::pair<double, double>> tail_atom);

  const std::vector<double>& atoms() const noexcept { return atoms_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::optional<std::pair<double, double>>& tail_atom() const noexcept {
    return tail_atom_;
  }

  double total_mass() const;
  // Mass of the interval (lo, hi], tail atom included.
  double mass_in(double lo, double hi) const;

 private:
  std::vector<double> atoms_;
  std::vector<double> weights_;
  std::optional<std::pair<double, double>> tail_atom_;
};

// Sticks drawn i.i.d. beta(1, c). Generation stops at the first length L
// with prod_{l<=L}(1 - v_l) < policy.epsilon and L >= min_length; the
// running product is accumulated in log domain. Throws truncation_overflow
// if the hard cap is reached first.
StickSequence sample_prior_sticks(const Concentration& c,
                                  const TruncationPolicy& policy,
                                  RngEngine& rng, std::size_t min_length = 0);

// Weights per w_j = v_j * prod_{l<j}(1 - v_l), with the remaining product
// as tail mass.
WeightSequence sticks_to_weights(const StickSequence& s);

// A truncated process draw: atoms i.i.d. from g aligned with the stick
// weights, and the residue assigned to one extra atom drawn from g.
DiscreteMeasure sample_prior_measure(const Concentration& c,
                                     const AtomSource& g,
                                     const TruncationPolicy& policy,
                                     RngEngine& rng);

}  // namespace dpsb

#endif  // DPSB_STICKBREAK_HPP_
