#pragma once

#include <cstddef>
#include <functional>

namespace colltherm {

/// Worker count for a requested value: positive values pass through, 0 selects
/// std::thread::hardware_concurrency (at least 1).
int resolve_threads(int requested);

/// Calls body(i) for i in [0, n) on up to `threads` workers. The first
/// exception thrown by any call is rethrown after all workers have joined.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

/// Pairwise (cascade) summation in fixed index order.
double pairwise_sum(const double* values, std::size_t n);

}  // namespace colltherm
