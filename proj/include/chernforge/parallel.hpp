#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace chernforge {

/// Number of worker threads: CHERNFORGE_THREADS if set (>=1), else hardware
/// concurrency.
int thread_count();

/// Runs fn(0..n-1), possibly on several threads. fn must be pure w.r.t. shared
/// state; iteration order is unspecified but results written per-index are
/// deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Pairwise (cascade) summation in fixed index order; bit-reproducible
/// regardless of thread count.
double pairwise_sum(const std::vector<double>& v);
std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v);

}  // namespace chernforge
