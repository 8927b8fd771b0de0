#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace paretogof {

// Runs body(i) for i in [0, count) on up to `workers` threads
// (0 = hardware concurrency), handing out indices in chunks. The first
// exception thrown by any body is rethrown after all threads join.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body,
                  std::size_t chunk = 1) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  chunk = std::max<std::size_t>(chunk, 1);
  const std::size_t chunks = (count + chunk - 1) / chunk;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(chunks, 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    try {
      for (;;) {
        const std::size_t begin = next.fetch_add(chunk);
        if (begin >= count) return;
        const std::size_t end = std::min(begin + chunk, count);
        for (std::size_t i = begin; i < end; ++i) body(i);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = count;
    }
  };

  if (workers <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace paretogof
