#pragma once

#include <cstddef>
#include <functional>

namespace dfma {

// Number of worker threads honored by parallel_for. Controlled by the
// DFMA_THREADS environment variable; 0 or unset means auto
// (hardware concurrency).
std::size_t thread_budget();

// Runs body(i) for i in [0, n). Work is split into contiguous blocks, one
// per worker; each index writes only its own output slot, so results are
// identical to the serial order. Exceptions from workers are rethrown on
// the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dfma
