#include "chernforge/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace chernforge {

int thread_count() {
  if (const char* env = std::getenv("CHERNFORGE_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([w, n, workers, &fn] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

template <class T>
T pairwise(const T* v, std::size_t n) {
  if (n <= 8) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise(v, h) + pairwise(v + h, n - h);
}

}  // namespace

double pairwise_sum(const std::vector<double>& v) {
  return v.empty() ? 0.0 : pairwise(v.data(), v.size());
}

std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v) {
  return v.empty() ? std::complex<double>(0.0) : pairwise(v.data(), v.size());
}

}  // namespace chernforge
