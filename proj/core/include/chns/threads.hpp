#pragma once

#include <cstddef>
#include <functional>

namespace chns {

/// Worker cap: CHNS_THREADS if set, otherwise hardware concurrency.
std::size_t worker_threads();

/// Run job(i) for i in [0, count) on up to worker_threads() threads.
/// Each job must touch only its own data; exceptions propagate.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job);

}  // namespace chns
