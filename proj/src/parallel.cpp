#include "kantor/parallel.hpp"

#include <cstdlib>
#include <string>

namespace kantor {

namespace {

std::atomic<std::size_t> g_threads{0};

std::size_t from_environment()
{
    if (const char* env = std::getenv("KANTOR_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace

void set_thread_count(std::size_t n) { g_threads = n; }

std::size_t thread_count()
{
    const std::size_t n = g_threads.load();
    return n > 0 ? n : from_environment();
}

} // namespace kantor
