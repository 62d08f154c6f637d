#pragma once

#include <cstddef>
#include <functional>

namespace ising {

// Worker count: ISING_PROPTEST_THREADS if set and positive, otherwise the
// hardware concurrency (at least 1).
int worker_count();

// Calls fn(i) for i in [0, count) across worker_count() threads. Work is
// handed out dynamically; fn must write only to index-owned state.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace ising
