#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fdlm/sparse.hpp"

namespace fdlm {

/// Worker cap for element loops. Defaults to FDLM_THREADS when set, otherwise the
/// hardware concurrency.
int worker_count();
/// Overrides the worker cap; values < 1 restore the default.
void set_worker_count(int n);

/// Runs body(first, last, out) over contiguous chunks of [0, n) and concatenates
/// the per-chunk triplets in chunk order. The output is identical for any worker count.
std::vector<Triplet> parallel_triplets(
    std::size_t n,
    const std::function<void(std::size_t, std::size_t, std::vector<Triplet>&)>& body);

/// Same as parallel_triplets for dense vector contributions (index, value).
std::vector<std::pair<int, double>> parallel_entries(
    std::size_t n,
    const std::function<void(std::size_t, std::size_t, std::vector<std::pair<int, double>>&)>&
        body);

}  // namespace fdlm
