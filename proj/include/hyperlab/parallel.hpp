#pragma once
#include <cstdlib>
#include <span>
#include <vector>

namespace hyperlab {

// Thread budget: min(omp_get_max_threads(), HYPERLAB_THREADS if set).
int thread_budget();

// Fixed-tree pairwise summation. The reduction tree depends only on the array
// length, never on the thread count, so results are bit-stable across runs.
double deterministic_sum(std::span<const double> xs);

inline double deterministic_sum(const std::vector<double>& xs) {
    return deterministic_sum(std::span<const double>(xs.data(), xs.size()));
}

} // namespace hyperlab
