#pragma once

#include <functional>

namespace nlschwarz {

// Runs fn(i) for i in [0, n) on a pool of threads, each index exactly once.
// Callers keep determinism by writing into per-index slots and combining
// sequentially afterwards. Thread count comes from NLSCHWARZ_THREADS when
// set, otherwise the hardware. The first exception thrown by any fn is
// rethrown on the calling thread.
void parallel_for(int n, const std::function<void(int)>& fn);

int worker_count();

}  // namespace nlschwarz
