#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rankaudit {

// Runs fn(i) for i in [begin, end) on up to `threads` workers pulling indices
// from a shared counter. Once any call throws, workers stop taking new indices;
// the exception from the smallest failing index is rethrown.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, std::size_t threads, Fn&& fn) {
    if (threads <= 1 || end - begin <= 1) {
        for (std::size_t i = begin; i < end; ++i) {
            fn(i);
        }
        return;
    }

    std::atomic<std::size_t> next{begin};
    std::atomic<bool> failed{false};
    std::mutex errorMutex;
    std::exception_ptr error;
    std::size_t errorIndex = end;

    const auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= end) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(errorMutex);
                if (i < errorIndex) {
                    errorIndex = i;
                    error = std::current_exception();
                }
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    const auto count = std::min(threads, end - begin);
    std::vector<std::jthread> pool;
    pool.reserve(count - 1);
    for (std::size_t t = 1; t < count; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();

    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace rankaudit
