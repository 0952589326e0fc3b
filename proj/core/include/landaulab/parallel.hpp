#pragma once

#include <functional>

namespace landaulab {

// Runs fn(0..count-1) on up to `workers` threads pulling from a shared
// counter. Tasks must be pure up to writing their own output slot; callers
// reduce the slots in index order afterwards, so results cannot depend on the
// worker count. The first exception thrown by any task is rethrown.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

}  // namespace landaulab
