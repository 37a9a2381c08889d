#pragma once

#include <cstddef>
#include <functional>

namespace equisym::parallel {

/// Runs fn(i) for i in [0, n) on up to `jobs` worker threads.
///
/// Each index is processed exactly once and results must be written to
/// per-index slots, so the outcome is identical for any job count.
/// jobs <= 1 runs inline. jobs == 0 uses the configured default.
void for_index(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

/// Default worker count used when a caller passes jobs == 0 (initially 1).
void set_default_jobs(int jobs);
int default_jobs();

}  // namespace equisym::parallel
