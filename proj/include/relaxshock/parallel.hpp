#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace relaxshock {

/// Worker count: hardware concurrency, capped by RELAXSHOCK_THREADS when set.
std::size_t worker_count();

/// Calls body(lo, hi) on disjoint contiguous chunks covering [0, n).
/// Chunks run on a persistent pool when n >= min_parallel and more than
/// one worker is available, otherwise inline. Chunk boundaries depend only
/// on n and the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_parallel = 16384);

/// Pairwise (fixed-shape tree) summation; the result depends only on the
/// input values and their order.
double tree_sum(std::span<const double> values);

}  // namespace relaxshock
