#include "equidist/reduce.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace equidist {

void parallel_for(std::int64_t n, int jobs,
                  const std::function<void(std::int64_t)>& body) {
  if (n <= 0) return;
  const std::int64_t workers =
      std::min<std::int64_t>(std::max(jobs, 1), n);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::mutex err_mutex;
  std::exception_ptr first_error;
  pool.reserve(static_cast<size_t>(workers));
  for (std::int64_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::int64_t i = t; i < n; i += workers) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace equidist
