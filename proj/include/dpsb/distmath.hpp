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
// Beta laws, the geometric law of the latent index, Dirichlet draws, and
// the closed-form moments the verification suites use as ground truth.
// Everything is a pure function of its arguments plus an explicit random
// stream, so concurrent use is safe as long as each thread owns its stream.

#ifndef DPSB_DISTMATH_HPP_
#define DPSB_DISTMATH_HPP_

#include <cstdint>
#include <vector>

#include "dpsb/rng.hpp"

namespace dpsb {

// Concentration parameter of the process; strictly positive and finite.
class Concentration {
 public:
  explicit Concentration(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

// Parameters of a beta(a, b) law; both strictly positive.
struct BetaParams {
  BetaParams(double a_in, double b_in);
  double a;
  double b;
};

// Moment orders: n for the first variable, m for the second when a test
// is bivariate.
struct MomentSpec {
  explicit MomentSpec(int n_in, int m_in = 1);
  int n;
  int m;
};

// E[V^n] for V ~ beta(a, b), evaluated as a log-gamma difference and then
// exponentiated. Throws std::domain_error if the result is not finite.
double beta_moment(const BetaParams& p, int n);

// P(J = j) = (c+1)^{-1} (c/(c+1))^{j-1}: the marginal law of the latent
// index. Values over j = 1, 2, ... sum to one.
double latent_index_pmf(const Concentration& c, std::uint64_t j);

// One beta(a, b) draw strictly inside (0,1); boundary values that arise
// from floating rounding are redrawn.
double sample_beta(const BetaParams& p, RngEngine& rng);

// One latent-index draw by closed-form inversion of a single uniform;
// support {1, 2, ...}.
std::uint64_t sample_latent_index(const Concentration& c, RngEngine& rng);

// One Dirichlet(alphas) draw as a normalized gamma vector. Requires
// every alpha > 0 and at least two components.
std::vector<double> sample_dirichlet(const std::vector<double>& alphas,
                                     RngEngine& rng);

}  // namespace dpsb

#endif  // DPSB_DISTMATH_HPP_
