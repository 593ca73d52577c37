#pragma once

#include <cstddef>
#include <functional>

namespace hhnet {

/// Runs fn(i) for i in [0, count) across `workers` threads. Exceptions are
/// rethrown on the caller once all workers have stopped. Callers that need
/// deterministic results write into per-index slots and reduce in index order.
void parallel_for_index(std::size_t count, std::size_t workers,
                        const std::function<void(std::size_t)>& fn);

std::size_t default_worker_count();

}  // namespace hhnet
