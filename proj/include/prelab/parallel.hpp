#pragma once

#include <thread>
#include <vector>

namespace prelab {

/// Applies fn to every index in [0, count) using up to `jobs` threads with a
/// static stride partition; results land in a preallocated slot per index,
/// so the outcome is independent of the schedule.
template <typename R, typename Fn>
std::vector<R> parallel_map(int count, int jobs, Fn fn) {
    std::vector<R> out(count);
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    int workers = std::min(jobs, count);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int t = 0; t < workers; ++t)
        threads.emplace_back([&, t]() {
            for (int i = t; i < count; i += workers) out[i] = fn(i);
        });
    for (auto& th : threads) th.join();
    return out;
}

}  // namespace prelab
