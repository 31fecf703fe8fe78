#pragma once

#include <cstddef>
#include <functional>

namespace rotor {

/// Worker count: ROTOR_THREADS when set (a positive integer), otherwise the
/// hardware concurrency. Throws InvalidArgument for a malformed value.
std::size_t thread_count();

/// Runs body(0..n-1) on up to thread_count() threads. The first exception
/// thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace rotor
