// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
//! \file parallel.hpp
//! Static-block parallel loop over an index range. Each index is handled
//! by exactly one thread, so callers that write to per-index slots get
//! results independent of the schedule.
#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace unruh {

//! Number of workers for a requested count (0 means hardware concurrency).
inline unsigned resolve_threads(unsigned requested)
{
    if (requested > 0)
        return requested;
    unsigned const hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

//! Calls f(i) for i in [0, n). The first exception thrown by any worker
//! is rethrown after all workers finish.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f)
{
    unsigned const workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
        {
            pool.emplace_back([&, w] {
                // Interleaved assignment balances rows of uneven cost.
                for (std::size_t i = w; i < n; i += workers)
                {
                    try
                    {
                        f(i);
                    }
                    catch (...)
                    {
                        std::lock_guard lock(error_mutex);
                        if (!error)
                            error = std::current_exception();
                        return;
                    }
                }
            });
        }
    }
    if (error)
        std::rethrow_exception(error);
}

}  // namespace unruh
