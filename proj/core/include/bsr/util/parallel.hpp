#pragma once

#include <cstddef>
#include <functional>

namespace bsr {

// Process-wide worker budget for data-parallel helpers. Defaults to 1.
// All splits are deterministic contiguous chunks writing disjoint outputs,
// so results do not depend on the worker count.
void set_workers(int n);
int workers();

// Runs fn(i) for i in [begin, end). With workers() == 1 this is a plain loop.
void parallel_for(size_t begin, size_t end, const std::function<void(size_t)>& fn);

// Runs fn(chunk_begin, chunk_end) over contiguous chunks.
void parallel_chunks(size_t begin, size_t end,
                     const std::function<void(size_t, size_t)>& fn);

}  // namespace bsr
