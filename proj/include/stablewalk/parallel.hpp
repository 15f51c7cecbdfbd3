// Copyright 2026 The stablewalk Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stablewalk::detail {

/// Runs body(begin, end) over [0, count) in chunks on `workers` threads.
/// Chunks are claimed dynamically; callers must write results by index so
/// the outcome does not depend on which thread ran which chunk.
template <class Body>
void parallel_for(std::uint64_t count, unsigned workers, Body&& body, std::uint64_t chunk = 64) {
    if (count == 0) return;
    workers = std::max(1u, workers);
    if (workers == 1 || count <= chunk) {
        body(std::uint64_t{0}, count);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        try {
            for (;;) {
                const std::uint64_t begin = next.fetch_add(chunk);
                if (begin >= count) return;
                body(begin, std::min(count, begin + chunk));
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    const auto spawned = static_cast<unsigned>(std::min<std::uint64_t>(workers, (count + chunk - 1) / chunk));
    pool.reserve(spawned);
    for (unsigned i = 0; i < spawned; ++i) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace stablewalk::detail
