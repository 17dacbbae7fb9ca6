#pragma once

#include <cstddef>
#include <functional>

namespace commcent {

/// Worker cap for intra-call parallelism; 0 means hardware concurrency.
/// Results never depend on this value.
void set_thread_count(unsigned threads);
unsigned thread_count();

/// Runs body(i) for i in [0, n) across the configured workers. Each index
/// runs exactly once; callers write to disjoint slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace commcent
