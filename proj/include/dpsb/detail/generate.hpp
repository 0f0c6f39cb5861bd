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

#ifndef DPSB_DETAIL_GENERATE_HPP_
#define DPSB_DETAIL_GENERATE_HPP_

#include <cstddef>

#include "dpsb/stickbreak.hpp"

namespace dpsb::detail {

// Shared generation loop for prior and posterior stick sequences: draw
// position l from law.law_at(l) until the tail rule fires at some
// L >= max(min_length, pivot), or fail at the hard cap.
StickSequence generate_sticks(const StickLaw& law,
                              const TruncationPolicy& policy, RngEngine& rng,
                              std::size_t min_length);

}  // namespace dpsb::detail

#endif  // DPSB_DETAIL_GENERATE_HPP_
