#pragma once

#include <cstddef>
#include <functional>

namespace sympro {

// Runs fn(0..n-1) over `jobs` worker threads (0 = hardware concurrency).
// Results must be written to per-index slots so the merge order never
// depends on scheduling.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

std::size_t effective_jobs(std::size_t jobs);

} // namespace sympro
