#pragma once

#include <cstddef>
#include <functional>

namespace adagio {

// Global worker budget honored by all modules. 0 or negative resets to the
// hardware concurrency. Deterministic algorithms partition work into fixed
// chunks and merge results in chunk order, so outputs never depend on the
// budget actually in effect.
int thread_budget();
void set_thread_budget(int n);

// Runs fn(chunk_index) for every chunk in [0, count). Chunks are claimed by
// worker threads in arbitrary order; callers must make chunks independent
// (typically each writes its own result slot).
void parallel_chunks(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace adagio
