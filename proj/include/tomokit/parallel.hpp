// Data-parallel map over an index range. Thread count is capped by the
// TOMOKIT_THREADS environment variable (default 1). Workers write to
// disjoint slots so results do not depend on scheduling.

#pragma once

#include <functional>

namespace tomokit {

// threads actually used for a range of length n
int thread_budget(int n);

// fn(i) for i in [0, n); fn must only touch state owned by index i
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace tomokit
