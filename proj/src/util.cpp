#include "pvh/util.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace pvh {

std::size_t worker_count() {
  std::size_t n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("PVH_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1 && static_cast<std::size_t>(v) < n)
        n = static_cast<std::size_t>(v);
    } catch (...) {
      // Malformed values are ignored; the default cap stands.
    }
  }
  return n;
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn) {
  if (end <= begin) return;
  const std::size_t total = end - begin;
  const std::size_t workers = worker_count();
  // Chunk size is fixed so that per-chunk work (and any accumulation order
  // inside fn) is independent of the worker count.
  constexpr std::size_t kChunk = 1024;
  if (workers == 1 || total <= kChunk) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  const std::size_t num_chunks = (total + kChunk - 1) / kChunk;
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= num_chunks) return;
      const std::size_t lo = begin + c * kChunk;
      const std::size_t hi = lo + kChunk < end ? lo + kChunk : end;
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
}

}  // namespace pvh
