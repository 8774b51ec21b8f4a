#pragma once

#include <cstddef>
#include <functional>

namespace pmis {

// Requested pool size if nonzero, else PMI_THREADS if set, else the
// hardware concurrency (at least 1).
std::size_t resolve_threads(std::size_t requested);

// Runs body(i) for i in [0, n) on up to `threads` workers with a static
// partition. If any call throws, the exception from the smallest index is
// rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace pmis
