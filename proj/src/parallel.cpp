#include "threshforge/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace threshforge {

int worker_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* cap = std::getenv("THRESH_FORGE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(cap, &end, 10);
        if (end != cap && v >= 1) n = std::min<long>(n, v);
    }
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    const std::size_t workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(begin + chunk, n);
        if (begin >= end) break;
        threads.emplace_back([&, w, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace threshforge
