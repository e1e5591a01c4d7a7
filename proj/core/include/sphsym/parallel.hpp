#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sphsym
{
/// Worker count used by the shell-parallel loops; 1 by default.
int thread_count();
void set_thread_count(int threads);

/// Runs body(i) for i in [0, count) on contiguous blocks. Each index must write
/// only its own output slot, so results do not depend on the worker count.
template <typename Body>
void parallel_for(std::size_t count, Body&& body)
{
        const std::size_t workers = std::min<std::size_t>(std::max(thread_count(), 1), std::max<std::size_t>(count, 1));
        if (workers <= 1)
        {
                for (std::size_t i = 0; i < count; ++i)
                {
                        body(i);
                }
                return;
        }
        std::exception_ptr failure;
        std::mutex lock;
        std::vector<std::thread> pool;
        const std::size_t block = (count + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w)
        {
                pool.emplace_back(
                        [&, w]
                        {
                                try
                                {
                                        const std::size_t end = std::min(count, (w + 1) * block);
                                        for (std::size_t i = w * block; i < end; ++i)
                                        {
                                                body(i);
                                        }
                                }
                                catch (...)
                                {
                                        std::lock_guard<std::mutex> g(lock);
                                        if (!failure)
                                        {
                                                failure = std::current_exception();
                                        }
                                }
                        });
        }
        for (std::thread& t : pool)
        {
                t.join();
        }
        if (failure)
        {
                std::rethrow_exception(failure);
        }
}
}
