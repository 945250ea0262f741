#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace statgeo {

/// Worker count: hardware concurrency capped by STATGEO_THREADS.
inline int thread_budget() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("STATGEO_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

/// max over fn(0..count-1), evaluated on the thread budget. The reduction is
/// order-independent, so the result does not depend on scheduling.
inline double parallel_max(int count, const std::function<double(int)>& fn) {
    const int workers = std::min(thread_budget(), std::max(count, 1));
    if (workers <= 1 || count <= 1) {
        double out = 0.0;
        for (int i = 0; i < count; ++i) out = std::max(out, fn(i));
        return out;
    }
    std::vector<double> partial(static_cast<std::size_t>(workers), 0.0);
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                    partial[static_cast<std::size_t>(w)] =
                        std::max(partial[static_cast<std::size_t>(w)], fn(i));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    double out = 0.0;
    for (double p : partial) out = std::max(out, p);
    return out;
}

}  // namespace statgeo
