#pragma once
#include <functional>

namespace nlslab {

// Global worker count for the parallel loops. 0 or negative resets to the
// hardware default. Loops partition the index range into contiguous blocks,
// one per worker, so results are independent of the thread count as long as
// iterations write to disjoint locations.
void set_num_threads(int n);
int num_threads();

void parallel_for(int n, const std::function<void(int)>& body);

} // namespace nlslab
