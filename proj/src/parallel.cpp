#include "hypsurf/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hypsurf {

unsigned thread_count() {
    if (const char* env = std::getenv("HYPSURF_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return static_cast<unsigned>(n);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {
thread_local bool in_worker = false;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    // nested calls run inline on the worker that issued them
    const unsigned workers = in_worker ? 1u : static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::size_t failure_index = n;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            in_worker = true;
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    // report the lowest failing index whatever the schedule
                    std::lock_guard lock(failure_mutex);
                    if (i < failure_index) {
                        failure_index = i;
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace hypsurf
