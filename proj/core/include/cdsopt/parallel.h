// Copyright 2026 The cdsopt Authors
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

#ifndef CDSOPT_PARALLEL_H_
#define CDSOPT_PARALLEL_H_

#include <cstdint>
#include <functional>

namespace cdsopt {

// Name of the environment variable capping worker threads.
inline constexpr const char* kThreadsEnvVar = "CDSOPT_THREADS";

// Worker count: CDSOPT_THREADS if set and positive, else the hardware
// concurrency (at least 1).
int MaxThreads();

// Splits [begin, end) into contiguous chunks, one per worker, and calls
// body(chunk_begin, chunk_end, worker_index). Runs inline when one worker
// suffices. The first exception thrown by any worker is rethrown.
void ParallelChunks(
    std::int64_t begin, std::int64_t end,
    const std::function<void(std::int64_t, std::int64_t, int)>& body);

// Number of chunks ParallelChunks would use for a range of `count` items.
int ChunkCount(std::int64_t count);

}  // namespace cdsopt

#endif  // CDSOPT_PARALLEL_H_
