#ifndef WAKIMOTO_PARALLEL_HPP
#define WAKIMOTO_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wakimoto {

// Runs body(i) for i in [0, count) on at most `jobs` workers.  Each index is
// claimed exactly once; the first exception wins and is rethrown after all
// workers join, so results written by index stay deterministic.
template <class F>
void parallel_for(long jobs, std::size_t count, F&& body) {
  if (count == 0) return;
  const std::size_t workers =
      jobs <= 1 ? 1
                : std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Ordered map: results[i] = f(i), assembled single-threaded by index so the
// output is identical for every jobs value.
template <class T, class F>
std::vector<T> parallel_map(long jobs, std::size_t count, F&& f) {
  std::vector<T> results(count);
  parallel_for(jobs, count, [&](std::size_t i) { results[i] = f(i); });
  return results;
}

}  // namespace wakimoto

#endif  // WAKIMOTO_PARALLEL_HPP
