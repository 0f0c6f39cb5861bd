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

#ifndef DPSB_ERRORS_HPP_
#define DPSB_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dpsb {

// Stick generation reached the hard cap before the tail mass fell
// below epsilon. Carries the tail mass that was actually achieved.
class truncation_overflow : public std::runtime_error {
 public:
  truncation_overflow(double achieved_tail, std::size_t hard_cap)
      : std::runtime_error("stick truncation hit hard cap " +
                           std::to_string(hard_cap) + " with tail mass " +
                           std::to_string(achieved_tail)),
        achieved_tail_(achieved_tail) {}

  double achieved_tail() const noexcept { return achieved_tail_; }

 private:
  double achieved_tail_;
};

// w_x rounded to within 1e-12 of one; the q renormalization would divide
// by (almost) zero and poison the h recursion downstream.
class degenerate_posterior : public std::runtime_error {
 public:
  explicit degenerate_posterior(double w_x)
      : std::runtime_error("degenerate posterior: w_x = " +
                           std::to_string(w_x) + " is within 1e-12 of 1") {}
};

// Rejection conditioning kept fewer samples than the statistical floor.
class undersampling_error : public std::runtime_error {
 public:
  undersampling_error(std::size_t accepted, std::size_t floor)
      : std::runtime_error(
            "only " + std::to_string(accepted) +
            " samples accepted (need >= " + std::to_string(floor) +
            "); increase `samples`"),
        accepted_(accepted) {}

  std::size_t accepted() const noexcept { return accepted_; }

 private:
  std::size_t accepted_;
};

}  // namespace dpsb

#endif  // DPSB_ERRORS_HPP_
