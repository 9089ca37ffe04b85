#pragma once

#include <functional>

namespace entwit {

// Resolves a requested worker count: values < 1 mean "one worker", and the
// ENTWIT_THREADS environment variable, when set, caps the result. Keeping
// the cap here gives every tool and test one switch for constrained runs.
int resolve_workers(int requested);

// Runs fn(begin, end) over [0, count) split into one contiguous chunk per
// worker. Chunk boundaries depend only on (count, workers), so any code
// that writes results by index produces identical output for a fixed worker
// count. The first exception thrown by a worker is rethrown in the caller.
void parallel_chunks(long count, int workers, const std::function<void(long, long)>& fn);

}  // namespace entwit
