// Copyright 2026 The slospell Authors
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

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace slospell {

/// out[i] = fn(items[i], i), computed on up to `jobs` threads. Results keep
/// input order. If several items throw, the exception of the lowest index
/// is rethrown, so failures are as deterministic as results.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, unsigned jobs, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, const T&, std::size_t>> {
  using R = std::invoke_result_t<Fn&, const T&, std::size_t>;
  std::vector<R> out(items.size());
  const std::size_t n = items.size();
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(items[i], i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i] = fn(items[i], i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  const auto count = std::min<std::size_t>(jobs, n);
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace slospell
