#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace renyi {

inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(i) for every i in [0, count) on up to `workers` threads.
/// Iterations must write only to state owned by index i.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  workers = static_cast<unsigned>(
      std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(count);
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// Computes record(i) for i in [0, count) in parallel, in fixed-size chunks,
/// then hands each record to fold(i, record) strictly in index order. The
/// result is independent of the worker count.
template <class Record, class Make, class Fold>
void replicate_ordered(std::size_t count, unsigned workers, Make&& make, Fold&& fold,
                       std::size_t chunk = 4096) {
  std::vector<Record> buffer;
  for (std::size_t begin = 0; begin < count; begin += chunk) {
    const std::size_t len = std::min(chunk, count - begin);
    buffer.assign(len, Record{});
    parallel_for(len, workers, [&](std::size_t i) { buffer[i] = make(begin + i); });
    for (std::size_t i = 0; i < len; ++i) fold(begin + i, std::move(buffer[i]));
  }
}

}  // namespace renyi
