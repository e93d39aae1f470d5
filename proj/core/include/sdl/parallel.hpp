#pragma once

#include <cstdint>
#include <functional>

namespace sdl {

/// Worker cap: SDL_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

/// Calls body(i) for i in [0, n) on up to `workers` threads (0 = worker_count()).
/// Indices are split into contiguous blocks; body must only touch slot i of
/// any shared output. The first exception thrown by a worker is rethrown.
void parallel_for(std::int64_t n, int workers, const std::function<void(std::int64_t)>& body);

/// 64-bit finalizer (splitmix64). Bijective.
std::uint64_t mix64(std::uint64_t x);

/// Seed of the independent stream for path p.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t p) { return mix64(seed ^ mix64(p)); }

}  // namespace sdl
