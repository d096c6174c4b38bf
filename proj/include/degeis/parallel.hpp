// Static block partition of an index range over worker threads. Each index
// is processed by exactly one worker and results are written by index, so
// the outcome does not depend on scheduling.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace degeis {

// Thread count from DEGEIS_THREADS if set to a positive integer, else the
// hardware concurrency.
inline int default_threads() {
  if (const char* env = std::getenv("DEGEIS_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

template <class F>
void parallel_for(std::int64_t count, int threads, F&& body) {
  if (count <= 0) return;
  const std::int64_t workers = std::clamp<std::int64_t>(threads, 1, count);
  if (workers == 1) {
    body(std::int64_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (std::int64_t w = 0; w < workers; ++w) {
    const std::int64_t begin = count * w / workers, end = count * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace degeis
