// Copyright 2026 The gibbskit Authors
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

#ifndef GIBBSKIT_WORKERS_H
#define GIBBSKIT_WORKERS_H

#include <functional>

namespace gibbskit {

/// Number of hardware threads, at least 1.
int default_workers();

/// Runs fn(0) ... fn(count - 1) on up to `workers` threads. Each index runs
/// exactly once; the first exception thrown is rethrown after all threads join.
void parallel_for(int count, int workers, const std::function<void(int)> &fn);

}  // namespace gibbskit

#endif
