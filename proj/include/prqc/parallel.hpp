// Copyright 2026 The prqc Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace prqc {

/// Number of worker threads: the PRQC_WORKERS environment variable when set
/// to a positive integer, otherwise the hardware concurrency (at least 1).
inline std::size_t worker_count() {
  if (const char* env = std::getenv("PRQC_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

/// Runs fn(i) for i in [0, count) across worker_count() threads.
///
/// Work is split into contiguous index blocks. Each index writes only to its
/// own output slot in caller-owned storage, so results are identical for any
/// worker count; the worker count affects speed only. The first exception
/// thrown by any worker is rethrown on the calling thread.
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  std::size_t workers = worker_count();
  if (workers > count) workers = count;
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  std::size_t chunk = (count + workers - 1) / workers;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = begin + chunk < count ? begin + chunk : count;
    if (begin >= end) break;
    threads.emplace_back([begin, end, w, &fn, &errors] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace prqc
