#pragma once

#include <cstdint>
#include <functional>

namespace sawq {

// requested <= 0 resolves to the hardware thread count.
int resolve_workers(int requested);

// Runs fn(i) for i in [0, n) across up to `workers` threads. Task claiming is
// racy by design, so callers must write results into index-addressed slots
// (or other merge targets whose outcome is independent of claim order) to
// stay deterministic. The first exception thrown by a task is rethrown after
// all threads join.
void parallel_for(uint64_t n, int workers, const std::function<void(uint64_t)>& fn);

}  // namespace sawq
