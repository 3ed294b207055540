#pragma once

#include <cstddef>
#include <functional>

namespace anchorclust {

// Runs fn(i) for i in [begin, end), split into contiguous chunks across up to
// `threads` worker threads. Callers must write only to disjoint locations so
// that the result is identical to sequential execution; threads <= 1 runs
// inline. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t begin, std::size_t end, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace anchorclust
