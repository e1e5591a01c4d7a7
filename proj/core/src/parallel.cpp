#include <sphsym/parallel.hpp>

#include <atomic>

namespace sphsym
{
namespace
{
std::atomic<int> g_threads{1};
}

int thread_count()
{
        return g_threads.load();
}

void set_thread_count(int threads)
{
        g_threads.store(std::max(threads, 1));
}
}
