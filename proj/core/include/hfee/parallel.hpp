#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace hfee {

/// Runs fn(0..count-1) across up to hardware_concurrency threads.
/// Exceptions from workers are rethrown on the caller (first index wins),
/// so results keyed by index stay deterministic regardless of scheduling.
void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace hfee
