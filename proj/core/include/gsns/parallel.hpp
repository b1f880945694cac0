#pragma once

#include <functional>

namespace gsns {

/// Worker count: GSNS_THREADS when set, hardware concurrency otherwise.
int default_thread_count();

/// Runs f(i) for i in [0, n) across threads. Each index writes only its own
/// slot, so results are deterministic regardless of scheduling.
void parallel_for(int n, const std::function<void(int)>& f, int threads = 0);

}  // namespace gsns
