#pragma once

#include <cstddef>
#include <cstdint>

namespace effdist {

// Resource caps shared by the certified routines. Exceeding one of them is
// reported as an error, never silently truncated.
struct Limits {
    int max_working_bits = 4096;        // precision-overflow beyond this
    std::uint64_t max_cells = 50'000'000; // quadrature cells per integral
    std::size_t max_tightness = 1 << 16;  // largest window index searched
    int max_extra_bits = 40;              // straddle refinement in tightness
    std::uint64_t max_grid = 1 << 22;     // Levy grid points
    unsigned threads = 0;                 // 0: hardware concurrency
};

// Process-wide defaults. EFFDIST_CELL_BUDGET and EFFDIST_THREADS are read once.
const Limits& default_limits();

} // namespace effdist
