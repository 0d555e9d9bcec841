#include "chemo/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace chemo::parallel {

namespace {
thread_local bool g_kernels_enabled = true;
}

bool kernels_enabled() { return g_kernels_enabled; }
void set_kernels_enabled(bool on) { g_kernels_enabled = on; }

unsigned sweep_workers() {
    if (const char* env = std::getenv("CHEMO_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n >= 1) return static_cast<unsigned>(n);
        } catch (...) {
            // fall through to the default
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace chemo::parallel
