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

#include "dpsb/distmath.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dpsb {

Concentration::Concentration(double value) : value_(value) {
  if (!std::isfinite(value) || value <= 0.0)
    throw std::invalid_argument("concentration must be finite and > 0, got " +
                                std::to_string(value));
}

BetaParams::BetaParams(double a_in, double b_in) : a(a_in), b(b_in) {
  if (!std::isfinite(a) || a <= 0.0 || !std::isfinite(b) || b <= 0.0)
    throw std::invalid_argument("beta parameters must be finite and > 0");
}

MomentSpec::MomentSpec(int n_in, int m_in) : n(n_in), m(m_in) {
  if (n < 1 || m < 1)
    throw std::invalid_argument("moment orders must be >= 1");
}

double beta_moment(const BetaParams& p, int n) {
  if (n < 1) throw std::invalid_argument("moment order must be >= 1");
  if (!std::isfinite(p.a + p.b + static_cast<double>(n)))
    throw std::domain_error("beta_moment parameter overflow at a=" +
                            std::to_string(p.a) + " b=" + std::to_string(p.b));
  // B(a+n, b) / B(a, b) telescoped: E[V^n] = prod_{k<n} (a+k)/(a+b+k).
  // Every factor lies in (0,1), so no parameter scale can overflow, and
  // the moment recurrence holds to rounding by construction.
  double moment = 1.0;
  for (int k = 0; k < n; ++k) moment *= (p.a + k) / (p.a + p.b + k);
  if (!std::isfinite(moment))
    throw std::domain_error("beta_moment overflow at a=" + std::to_string(p.a) +
                            " b=" + std::to_string(p.b) +
                            " n=" + std::to_string(n));
  return moment;
}

double latent_index_pmf(const Concentration& c, std::uint64_t j) {
  if (j < 1) throw std::invalid_argument("index must be >= 1");
  const double cv = c.value();
  // log p = -log(c+1) + (j-1) log(c/(c+1)), with log(c/(c+1)) = -log1p(1/c)
  const double log_p = -std::log1p(cv) -
                       static_cast<double>(j - 1) * std::log1p(1.0 / cv);
  return std::exp(log_p);
}

double sample_beta(const BetaParams& p, RngEngine& rng) {
  for (;;) {
    double draw;
    if (p.a == 1.0) {
      // inverse CDF: V = 1 - U^{1/b}
      draw = -std::expm1(std::log(uniform01(rng)) / p.b);
    } else if (p.b == 1.0) {
      draw = std::exp(std::log(uniform01(rng)) / p.a);
    } else {
      const double x = std::gamma_distribution<double>(p.a)(rng);
      const double y = std::gamma_distribution<double>(p.b)(rng);
      if (x + y <= 0.0) continue;
      draw = x / (x + y);
    }
    // boundary hits are probability-zero events surfaced by rounding;
    // redraw so downstream products and ratios stay finite
    if (draw > 0.0 && draw < 1.0) return draw;
  }
}

std::uint64_t sample_latent_index(const Concentration& c, RngEngine& rng) {
  // closed-form inversion of one uniform: J = ceil(log u / log(c/(c+1)))
  const double log_ratio = -std::log1p(1.0 / c.value());
  const double raw = std::ceil(std::log(uniform01(rng)) / log_ratio);
  if (raw < 1.0) return 1;
  return static_cast<std::uint64_t>(raw);
}

std::vector<double> sample_dirichlet(const std::vector<double>& alphas,
                                     RngEngine& rng) {
  if (alphas.size() < 2)
    throw std::invalid_argument("dirichlet needs at least two components");
  for (double a : alphas)
    if (!std::isfinite(a) || a <= 0.0)
      throw std::invalid_argument("dirichlet alphas must be finite and > 0");

  std::vector<double> draw(alphas.size());
  for (;;) {
    double total = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      draw[i] = std::gamma_distribution<double>(alphas[i])(rng);
      total += draw[i];
    }
    if (total <= 0.0) continue;  // all components underflowed; redraw
    for (double& w : draw) w /= total;
    return draw;
  }
}

}  // namespace dpsb
