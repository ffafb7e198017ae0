#pragma once

#include <cstddef>
#include <functional>

namespace bincs {

// Number of worker threads to use for a requested count; 0 means one per
// hardware thread.
int resolve_threads(int requested);

// Runs body(i) for i in [0, count) on up to `threads` workers. Indices are
// dealt round-robin, so callers that write results into slot i and reduce
// afterwards get output independent of the thread count. The first exception
// thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace bincs
