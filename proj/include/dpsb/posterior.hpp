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
// Exact one-observation posterior machinery: the latent index, the
// three-law posterior stick sequence, and the derived quantities
// w_x, q, h and psi, up to the assembled posterior measure
//
//   P = (1 - w_x) sum_l q_l delta_{theta_l} + w_x delta_x.

#ifndef DPSB_POSTERIOR_HPP_
#define DPSB_POSTERIOR_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dpsb/stickbreak.hpp"

namespace dpsb {

// A point of the base-measure space the process was observed at.
struct Observation {
  double x;
};

// xi = psi * (1 - v) and zeta = v / (1 - xi) for one (v, psi) pair.
// phi is a slot for the second-level factor of bivariate checks; the
// transform itself leaves it empty.
struct TransformBundle {
  double v;
  double psi;
  double xi;
  double zeta;
  std::optional<double> phi;
};

// One full posterior draw: the latent index, its stick sequence, and
// everything derived from them. Immutable after construction.
struct PosteriorDraw {
  std::size_t j;
  StickSequence sticks;
  double w_x;
  std::vector<double> q;
  std::vector<double> h;
  std::optional<std::size_t> psi_level;
  std::optional<double> psi;
};

// Posterior sticks for pivot j: positions l < j are beta(1, c+1), position
// j is beta(2, c), positions l > j are beta(1, c). Generation always
// reaches position j and then continues until the truncation rule fires
// (or min_length is satisfied, whichever is later).
StickSequence sample_posterior_sticks(const Concentration& c, std::size_t j,
                                      const TruncationPolicy& policy,
                                      RngEngine& rng,
                                      std::size_t min_length = 0);

// w_x = v_j * prod_{l<j}(1 - v_l) from a posterior-tagged sequence.
double compute_w_x(const StickSequence& s);

// q_l = w_l / (1 - w_x) for l < j and w_{l+1} / (1 - w_x) for l >= j:
// the weight sequence with position j deleted and renormalized. Throws
// degenerate_posterior when w_x is within 1e-12 of one.
std::vector<double> compute_q(const StickSequence& s, double w_x);

// The ratio recursion h_l = q_l / (1 - q_1 - ... - q_{l-1}), with the
// running remainder accumulated in log domain. The list is truncated at
// the first position whose remainder falls below 1e-14.
std::vector<double> compute_h_from_q(const std::vector<double>& q);

// psi_{j,l} = v_j * prod_{l<r<j}(1 - v_r); requires l < j.
double compute_psi(const StickSequence& s, std::size_t l);

// Closed form of h_l: v_l / [1 - psi_{j,l}(1 - v_l)] for l < j and
// v_{l+1} for l >= j.
double compute_h_closed_form(const StickSequence& s, std::size_t l);

// The (v, psi) -> (xi, zeta) change of variables; open-interval inputs.
TransformBundle lemma2_transform(double v, double psi);

// Inverse of lemma2_transform: v = zeta(1 - xi), psi = xi / (1 - v).
std::pair<double, double> lemma2_invert(double xi, double zeta);

// Draws J, posterior sticks, and assembles the posterior measure: atom x
// carries w_x, fresh atoms from g carry (1 - w_x) q_l, and the stick tail
// goes to one extra atom. Atom x is always stored first and never merged
// with a G-atom by value.
std::pair<DiscreteMeasure, PosteriorDraw> sample_posterior_measure(
    const Concentration& c, const Observation& x, const AtomSource& g,
    const TruncationPolicy& policy, RngEngine& rng,
    std::size_t min_length = 0);

}  // namespace dpsb

#endif  // DPSB_POSTERIOR_HPP_
