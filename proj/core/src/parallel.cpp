#include "carnot/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace carnot {

int worker_count() {
  if (const char* env = std::getenv("CARNOT_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  int workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  auto run = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) break;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) err = std::current_exception();
        break;
      }
    }
  };
  std::vector<std::thread> pool;
  int use = static_cast<int>(std::min<size_t>(workers, n));
  pool.reserve(use);
  for (int t = 0; t < use; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (failed.load() && err) std::rethrow_exception(err);
}

}  // namespace carnot
