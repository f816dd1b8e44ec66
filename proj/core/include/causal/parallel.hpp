#pragma once

#include <cstddef>
#include <functional>

namespace causal {

/// Worker count for library fan-out. 0 selects the hardware concurrency.
/// Affects speed only: every reduction in the library uses a fixed tree.
void set_thread_count(int n);
int thread_count() noexcept;

/// Runs body(i) for every i in [0, count). Calls made from inside a running
/// parallel_for execute serially on the calling worker.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace causal
