// Small shared utilities: deterministic parallel loops and wall-clock timing.

#pragma once

#include <chrono>
#include <cstddef>
#include <functional>

namespace pvh {

// Number of worker threads used by parallel_for.  Defaults to the hardware
// concurrency, capped by the PVH_THREADS environment variable when set to a
// positive integer.  A value of 1 runs everything inline.
std::size_t worker_count();

// Runs fn(i) for i in [begin, end).  Work is split into fixed-size chunks that
// do not depend on the worker count, so any per-chunk accumulation (and hence
// every numeric result in this codebase) is reproducible across thread
// settings.  fn must be safe to call concurrently for distinct i.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn);

// Milliseconds elapsed since construction.
class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace pvh
