// Copyright 2026 The cvbell Authors
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

#pragma once

#include <cstddef>
#include <functional>

namespace cvbell {

/// Worker count for grid scans: CVBELL_THREADS if set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
std::size_t scan_threads();

/// Calls fn(i) for every i in [0, n), split into contiguous blocks across
/// scan_threads() workers. fn must be safe to call concurrently. The first
/// exception thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace cvbell
