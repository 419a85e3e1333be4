// Copyright 2026 The planarpx Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace ppx {

namespace detail {
inline int& thread_count_slot() {
  static int count = 1;
  return count;
}
}  // namespace detail

inline int default_thread_count() { return detail::thread_count_slot(); }
inline void set_default_thread_count(int threads) {
  detail::thread_count_slot() = std::max(1, threads);
}

/// Runs row_fn(y) for y in [0, height). Rows are split into contiguous
/// blocks, one per worker; every row writes only its own outputs, so the
/// result is identical for any thread count.
inline void parallel_rows(int height, const std::function<void(int)>& row_fn,
                          int threads = 0) {
  if (threads <= 0) threads = default_thread_count();
  threads = std::clamp(threads, 1, std::max(1, height));
  if (threads == 1) {
    for (int y = 0; y < height; ++y) row_fn(y);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    const int begin = static_cast<int>(static_cast<long>(height) * t / threads);
    const int end =
        static_cast<int>(static_cast<long>(height) * (t + 1) / threads);
    workers.emplace_back([begin, end, &row_fn] {
      for (int y = begin; y < end; ++y) row_fn(y);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace ppx
