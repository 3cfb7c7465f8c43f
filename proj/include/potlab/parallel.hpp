#pragma once

#include <cstddef>
#include <functional>

namespace potlab {

/// Worker count: POTLAB_THREADS if set, else hardware concurrency.
int thread_count();

// Static-partition parallel loop. Each index is handled by exactly one
// worker and writes only its own outputs, so results do not depend on
// the thread count.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace potlab
