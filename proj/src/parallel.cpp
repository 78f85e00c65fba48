#include "spikescope/parallel.hpp"

#include <cstdlib>
#include <string>

namespace spikescope {

std::size_t worker_count() {
    static const std::size_t cached = [] {
        std::size_t n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
        if (const char* env = std::getenv("SPIKESCOPE_THREADS")) {
            char* end = nullptr;
            const unsigned long v = std::strtoul(env, &end, 10);
            if (end != env && v >= 1 && v < 1024) n = std::min<std::size_t>(n, v);
        }
        return n;
    }();
    return cached;
}

}  // namespace spikescope
