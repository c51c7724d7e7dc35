// Copyright 2026 The incompat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INCOMPAT_PARALLEL_H
#define INCOMPAT_PARALLEL_H

#include <cstddef>
#include <functional>

namespace incompat {

/// Worker count: INCOMPAT_THREADS when set to a positive integer, else the hardware concurrency.
int parallel_workers();

/// Calls fn(i) for i in [0, count) on up to `workers` threads (0 means parallel_workers()).
/// Indices are claimed dynamically, so fn must write only to per-index state. The first exception
/// thrown by any call is rethrown after all workers finish.
void parallel_for(size_t count, int workers, const std::function<void(size_t)> &fn);

}  // namespace incompat

#endif
