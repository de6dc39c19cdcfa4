#ifndef KGRAPH_PARALLEL_HPP
#define KGRAPH_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace kgraph {

// Worker cap: KGRAPH_THREADS when set, otherwise hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("KGRAPH_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Evaluates independent double-valued cases and returns them in index order,
// so aggregation stays deterministic regardless of the thread count.
inline std::vector<double> evaluate_cases(const std::vector<std::function<double()>>& cases) {
    std::vector<double> out(cases.size(), 0.0);
    int workers = worker_count();
    if (workers <= 1 || cases.size() < 8) {
        for (std::size_t i = 0; i < cases.size(); ++i) out[i] = cases[i]();
        return out;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (cases.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(cases.size(), lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = cases[i]();
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

} // namespace kgraph

#endif // KGRAPH_PARALLEL_HPP
