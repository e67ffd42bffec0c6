#ifndef TRIAGE_PARALLEL_HPP
#define TRIAGE_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace triage {

// Runs fn(i) for i in [0, count) on a bounded pool. Results must be written
// by the caller into per-index slots, so the output is identical however the
// indices are scheduled.
template <typename Fn>
void parallel_for_index(std::size_t count, Fn&& fn, unsigned workers = 0) {
  if (count == 0) return;
  unsigned n = workers == 0 ? std::thread::hardware_concurrency() : workers;
  if (n == 0) n = 1;
  if (static_cast<std::size_t>(n) > count) n = static_cast<unsigned>(count);
  if (n == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (unsigned w = 0; w < n; ++w) {
    pool.emplace_back([&next, count, &fn] {
      for (std::size_t i = next.fetch_add(1); i < count;
           i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace triage

#endif  // TRIAGE_PARALLEL_HPP
