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

#ifndef DPSB_DETAIL_PARALLEL_HPP_
#define DPSB_DETAIL_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace dpsb::detail {

// 0 means "available parallelism"; always at least 1.
unsigned resolve_workers(unsigned requested);

// Runs body(index) for every index in [0, count) across worker threads.
// Scheduling is dynamic, so body must derive everything it needs from the
// index alone and write only to slots it owns; under that contract results
// cannot depend on the worker count. Exceptions are rethrown to the caller.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace dpsb::detail

#endif  // DPSB_DETAIL_PARALLEL_HPP_
