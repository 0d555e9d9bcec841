#pragma once

#include <cstdint>

namespace chemo::parallel {

// Kernels below this many cells run serial regardless; OpenMP overhead is not
// worth it on desk-scale 1D grids.
inline constexpr int kGrainSize = 4096;

// Per-thread switch. Sweep workers flip it off so concurrent simulations do
// not oversubscribe the machine with nested OpenMP teams. Results do not
// depend on it: every kernel is thread-count-invariant.
bool kernels_enabled();
void set_kernels_enabled(bool on);

struct SerialKernelsGuard {
    SerialKernelsGuard() : prev_(kernels_enabled()) { set_kernels_enabled(false); }
    ~SerialKernelsGuard() { set_kernels_enabled(prev_); }
    SerialKernelsGuard(const SerialKernelsGuard&) = delete;
    SerialKernelsGuard& operator=(const SerialKernelsGuard&) = delete;

  private:
    bool prev_;
};

// Worker cap for parameter sweeps: CHEMO_THREADS if set, else hardware concurrency.
unsigned sweep_workers();

}  // namespace chemo::parallel
