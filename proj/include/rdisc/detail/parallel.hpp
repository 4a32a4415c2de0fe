#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace rdisc::detail {

/// Runs fn(i) for i in [0, count) on up to hardware_concurrency threads in
/// disjoint stripes. Results must be written to disjoint slots, which keeps
/// the outcome bit-identical regardless of thread count.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::size_t nthreads = std::min<std::size_t>(hw, count);
  std::vector<std::thread> workers;
  workers.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    workers.emplace_back([&, t]() {
      for (std::size_t i = t; i < count; i += nthreads) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace rdisc::detail
