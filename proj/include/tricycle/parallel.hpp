// parallel.hpp: index-parallel map for independent sweep points

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tricycle {

// Worker count: TRICYCLE_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

// out[i] = fn(i) for i in [0, n). Results land by index, so the output does
// not depend on scheduling. The first exception thrown by fn is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn);

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
    return out;
}

} // namespace tricycle
