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

#include "cdsopt/parallel.h"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cdsopt {

int MaxThreads() {
  if (const char* env = std::getenv(kThreadsEnvVar); env != nullptr) {
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end != env && value > 0) return static_cast<int>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int ChunkCount(std::int64_t count) {
  if (count <= 0) return 0;
  // Below this size thread startup dominates.
  constexpr std::int64_t kMinChunk = 64;
  std::int64_t by_size = (count + kMinChunk - 1) / kMinChunk;
  return static_cast<int>(std::min<std::int64_t>(MaxThreads(), by_size));
}

void ParallelChunks(
    std::int64_t begin, std::int64_t end,
    const std::function<void(std::int64_t, std::int64_t, int)>& body) {
  const std::int64_t count = end - begin;
  const int chunks = ChunkCount(count);
  if (chunks <= 1) {
    if (count > 0) body(begin, end, 0);
    return;
  }
  std::exception_ptr first_error;
  std::mutex mu;
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  for (int c = 0; c < chunks; ++c) {
    std::int64_t lo = begin + count * c / chunks;
    std::int64_t hi = begin + count * (c + 1) / chunks;
    workers.emplace_back([&, lo, hi, c] {
      try {
        body(lo, hi, c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace cdsopt
